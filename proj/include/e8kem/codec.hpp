#ifndef E8KEM_CODEC_HPP
#define E8KEM_CODEC_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "e8kem/kem.hpp"

namespace e8kem {

// Bit-exact wire formats. Coefficients are written as log2(q)-bit
// little-endian chunks of a LSB-first bit stream, in ascending index order;
// hint coordinates as (p-1)-bit chunks, block-major. Message 1 is
// seed || packed(b); message 2 is packed(u) || packed hint.

std::vector<uint8_t> pack_poly(const Poly& a, const Params& params);
Poly unpack_poly(std::span<const uint8_t> bytes, const Params& params);

std::vector<uint8_t> pack_polyvec(const PolyVec& x, const Params& params);
PolyVec unpack_polyvec(std::span<const uint8_t> bytes, const Params& params);

std::vector<uint8_t> pack_hint(const HelpHint& r, const Params& params);
HelpHint unpack_hint(std::span<const uint8_t> bytes, const Params& params);

std::vector<uint8_t> encode_msg1(const PublicKey& pk, const Params& params);
PublicKey decode_msg1(std::span<const uint8_t> bytes, const Params& params);

struct Msg2 {
    PolyVec u;
    HelpHint hint;
};

std::vector<uint8_t> encode_msg2(const PolyVec& u, const HelpHint& hint, const Params& params);
Msg2 decode_msg2(std::span<const uint8_t> bytes, const Params& params);

// Known-answer-test records: seed is the 96 bytes of entropy driving one
// gen+encaps exchange (64 server || 32 client), the other fields the
// resulting wire bytes. Files carry the "E8K1" magic line followed by
// lowercase "name=hex" lines; unknown names are rejected.
struct KatRecord {
    std::vector<uint8_t> seed;
    std::vector<uint8_t> pk;   // message 1 bytes
    std::vector<uint8_t> sk;   // packed secret vector s
    std::vector<uint8_t> msg2; // message 2 bytes
    std::vector<uint8_t> key;  // 32 shared-key bytes
};

void kat_write(std::ostream& out, std::span<const KatRecord> records);
std::vector<KatRecord> kat_read(std::istream& in);

void kat_write_file(const std::string& path, std::span<const KatRecord> records);
std::vector<KatRecord> kat_read_file(const std::string& path);

std::string to_hex(std::span<const uint8_t> bytes);
std::vector<uint8_t> from_hex(std::string_view hex);

inline constexpr std::string_view FILE_MAGIC = "E8K1";

} // namespace e8kem

#endif
