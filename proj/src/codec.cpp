#include "e8kem/codec.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace e8kem {

namespace {

class BitWriter {
public:
    explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

    void put_chunk(uint32_t value, int bits) {
        for (int i = 0; i < bits; i++) {
            const size_t byte = bit_ / 8;
            if (byte == out_.size())
                out_.push_back(0);
            out_[byte] |= uint8_t((value >> i) & 1) << (bit_ % 8);
            bit_++;
        }
    }

private:
    std::vector<uint8_t>& out_;
    size_t bit_ = 0;
};

class BitCursor {
public:
    explicit BitCursor(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint32_t get_chunk(int bits) {
        uint32_t value = 0;
        for (int i = 0; i < bits; i++) {
            value |= uint32_t((bytes_[bit_ / 8] >> (bit_ % 8)) & 1) << i;
            bit_++;
        }
        return value;
    }

private:
    std::span<const uint8_t> bytes_;
    size_t bit_ = 0;
};

void require_size(std::span<const uint8_t> bytes, size_t expected, const char* what) {
    if (bytes.size() != expected)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                    " bytes, got " + std::to_string(bytes.size()));
}

} // namespace

std::vector<uint8_t> pack_poly(const Poly& a, const Params& params) {
    std::vector<uint8_t> out;
    out.reserve(params.packed_poly_bytes());
    BitWriter bits(out);
    for (int t = 0; t < N; t++)
        bits.put_chunk(a.c[t], params.log2q);
    return out;
}

Poly unpack_poly(std::span<const uint8_t> bytes, const Params& params) {
    require_size(bytes, params.packed_poly_bytes(), "unpack_poly");
    BitCursor bits(bytes);
    Poly out;
    for (int t = 0; t < N; t++)
        out.c[t] = uint16_t(bits.get_chunk(params.log2q));
    return out;
}

std::vector<uint8_t> pack_polyvec(const PolyVec& x, const Params& params) {
    std::vector<uint8_t> out;
    out.reserve(params.packed_vec_bytes());
    for (int i = 0; i < D; i++) {
        auto piece = pack_poly(x.v[i], params);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
}

PolyVec unpack_polyvec(std::span<const uint8_t> bytes, const Params& params) {
    require_size(bytes, params.packed_vec_bytes(), "unpack_polyvec");
    PolyVec out;
    const size_t step = params.packed_poly_bytes();
    for (int i = 0; i < D; i++)
        out.v[i] = unpack_poly(bytes.subspan(i * step, step), params);
    return out;
}

std::vector<uint8_t> pack_hint(const HelpHint& r, const Params& params) {
    std::vector<uint8_t> out;
    out.reserve(params.hint_bytes());
    BitWriter bits(out);
    for (int kappa = 0; kappa < L; kappa++)
        for (int i = 0; i < BLOCK_DIM; i++)
            bits.put_chunk(r.coords[kappa][i], params.p - 1);
    return out;
}

HelpHint unpack_hint(std::span<const uint8_t> bytes, const Params& params) {
    require_size(bytes, params.hint_bytes(), "unpack_hint");
    BitCursor bits(bytes);
    HelpHint out;
    for (int kappa = 0; kappa < L; kappa++)
        for (int i = 0; i < BLOCK_DIM; i++)
            out.coords[kappa][i] = uint8_t(bits.get_chunk(params.p - 1));
    return out;
}

std::vector<uint8_t> encode_msg1(const PublicKey& pk, const Params& params) {
    std::vector<uint8_t> out(pk.seed.bytes.begin(), pk.seed.bytes.end());
    auto packed = pack_polyvec(pk.b, params);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

PublicKey decode_msg1(std::span<const uint8_t> bytes, const Params& params) {
    require_size(bytes, params.msg1_bytes(), "decode_msg1");
    PublicKey pk;
    std::copy(bytes.begin(), bytes.begin() + 32, pk.seed.bytes.begin());
    pk.b = unpack_polyvec(bytes.subspan(32), params);
    return pk;
}

std::vector<uint8_t> encode_msg2(const PolyVec& u, const HelpHint& hint, const Params& params) {
    std::vector<uint8_t> out = pack_polyvec(u, params);
    auto packed = pack_hint(hint, params);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

Msg2 decode_msg2(std::span<const uint8_t> bytes, const Params& params) {
    require_size(bytes, params.msg2_bytes(), "decode_msg2");
    Msg2 out;
    out.u = unpack_polyvec(bytes.first(params.packed_vec_bytes()), params);
    out.hint = unpack_hint(bytes.subspan(params.packed_vec_bytes()), params);
    return out;
}

std::string to_hex(std::span<const uint8_t> bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t byte : bytes) {
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

std::vector<uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("from_hex: odd number of digits");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::invalid_argument("from_hex: invalid digit");
    };
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); i++)
        out[i] = uint8_t(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

void kat_write(std::ostream& out, std::span<const KatRecord> records) {
    out << FILE_MAGIC << "\n";
    for (const KatRecord& record : records) {
        out << "seed=" << to_hex(record.seed) << "\n";
        out << "pk=" << to_hex(record.pk) << "\n";
        out << "sk=" << to_hex(record.sk) << "\n";
        out << "msg2=" << to_hex(record.msg2) << "\n";
        out << "key=" << to_hex(record.key) << "\n";
    }
}

std::vector<KatRecord> kat_read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != FILE_MAGIC)
        throw std::invalid_argument("kat_read: missing E8K1 magic");

    std::vector<KatRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("kat_read: malformed line: " + line);
        const std::string name = line.substr(0, eq);
        std::vector<uint8_t> value = from_hex(line.substr(eq + 1));
        if (name == "seed")
            records.emplace_back().seed = std::move(value);
        else if (records.empty())
            throw std::invalid_argument("kat_read: record must start with seed");
        else if (name == "pk")
            records.back().pk = std::move(value);
        else if (name == "sk")
            records.back().sk = std::move(value);
        else if (name == "msg2")
            records.back().msg2 = std::move(value);
        else if (name == "key")
            records.back().key = std::move(value);
        else
            throw std::invalid_argument("kat_read: unknown key: " + name);
    }
    return records;
}

void kat_write_file(const std::string& path, std::span<const KatRecord> records) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    kat_write(out, records);
}

std::vector<KatRecord> kat_read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return kat_read(in);
}

} // namespace e8kem
