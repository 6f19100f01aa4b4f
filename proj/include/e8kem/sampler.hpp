#ifndef E8KEM_SAMPLER_HPP
#define E8KEM_SAMPLER_HPP

#include <array>
#include <cstdint>
#include <span>

#include "e8kem/ring.hpp"

namespace e8kem {

struct Seed {
    std::array<uint8_t, 32> bytes{};
};

// Unique per sampled polynomial within one protocol run.
struct NoiseNonce {
    uint8_t domain = 0;
    uint8_t counter = 0;
};

/**
 * Deterministic expansion of the public matrix. Entry (i, j) is generated by
 * SHAKE-128 over 0x00 || seed || i || j, consuming log2(q)-bit little-endian
 * chunks of the output bit stream (LSB first within each byte). q is a power
 * of two, so every chunk is a valid coefficient and no rejection occurs.
 * These byte encodings are normative for KAT compatibility.
 */
PolyMat expand_matrix(const Seed& seed, const Params& params);

/**
 * Centered binomial noise polynomial psi_k. The XOF input is
 * 0x01 || seed || domain || counter; each coefficient consumes 2k stream
 * bits, the sum of the first k minus the sum of the next k, reduced into
 * [0, q).
 */
Poly sample_cbd_poly(const Seed& seed, NoiseNonce nonce, const Params& params);

/// d independent noise polynomials with consecutive nonce counters.
PolyVec sample_cbd_vec(const Seed& seed, NoiseNonce base, const Params& params);

// The raw stream-to-coefficient mappings, exposed so the bit conventions are
// testable without going through the XOF.
Poly cbd_from_stream(std::span<const uint8_t> stream, const Params& params);
Poly uniform_from_stream(std::span<const uint8_t> stream, const Params& params);

size_t cbd_stream_bytes(const Params& params);
size_t uniform_stream_bytes(const Params& params);

} // namespace e8kem

#endif
