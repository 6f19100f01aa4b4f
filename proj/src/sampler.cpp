#include "e8kem/sampler.hpp"

#include <stdexcept>
#include <vector>

#include "e8kem/shake.hpp"

namespace e8kem {

namespace {

// LSB-first bit cursor over a byte stream.
class BitReader {
public:
    explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    int next_bit() {
        const size_t byte = bit_ / 8;
        const int bit = int(bit_ % 8);
        bit_++;
        return (bytes_[byte] >> bit) & 1;
    }

    uint32_t next_chunk(int bits) {
        uint32_t value = 0;
        for (int i = 0; i < bits; i++)
            value |= uint32_t(next_bit()) << i;
        return value;
    }

private:
    std::span<const uint8_t> bytes_;
    size_t bit_ = 0;
};

constexpr uint8_t MATRIX_DOMAIN = 0x00;
constexpr uint8_t NOISE_DOMAIN = 0x01;

} // namespace

size_t cbd_stream_bytes(const Params& params) {
    return size_t(N) * 2 * params.k / 8 + ((size_t(N) * 2 * params.k) % 8 != 0);
}

size_t uniform_stream_bytes(const Params& params) {
    return size_t(N) * params.log2q / 8;
}

Poly uniform_from_stream(std::span<const uint8_t> stream, const Params& params) {
    if (stream.size() < uniform_stream_bytes(params))
        throw std::invalid_argument("uniform_from_stream: stream too short");
    BitReader bits(stream);
    Poly out;
    for (int t = 0; t < N; t++)
        out.c[t] = uint16_t(bits.next_chunk(params.log2q));
    return out;
}

Poly cbd_from_stream(std::span<const uint8_t> stream, const Params& params) {
    if (stream.size() < cbd_stream_bytes(params))
        throw std::invalid_argument("cbd_from_stream: stream too short");
    BitReader bits(stream);
    Poly out;
    for (int t = 0; t < N; t++) {
        int value = 0;
        for (int i = 0; i < params.k; i++)
            value += bits.next_bit();
        for (int i = 0; i < params.k; i++)
            value -= bits.next_bit();
        out.c[t] = uint16_t(uint32_t(value) & (params.q - 1));
    }
    return out;
}

PolyMat expand_matrix(const Seed& seed, const Params& params) {
    PolyMat a;
    std::vector<uint8_t> stream(uniform_stream_bytes(params));
    for (int i = 0; i < D; i++)
        for (int j = 0; j < D; j++) {
            Shake128 xof;
            const uint8_t prefix[1] = {MATRIX_DOMAIN};
            const uint8_t index[2] = {uint8_t(i), uint8_t(j)};
            xof.absorb(prefix);
            xof.absorb(seed.bytes);
            xof.absorb(index);
            xof.squeeze(stream);
            a.m[i][j] = uniform_from_stream(stream, params);
        }
    return a;
}

Poly sample_cbd_poly(const Seed& seed, NoiseNonce nonce, const Params& params) {
    std::vector<uint8_t> stream(cbd_stream_bytes(params));
    Shake128 xof;
    const uint8_t prefix[1] = {NOISE_DOMAIN};
    const uint8_t tail[2] = {nonce.domain, nonce.counter};
    xof.absorb(prefix);
    xof.absorb(seed.bytes);
    xof.absorb(tail);
    xof.squeeze(stream);
    return cbd_from_stream(stream, params);
}

PolyVec sample_cbd_vec(const Seed& seed, NoiseNonce base, const Params& params) {
    PolyVec out;
    for (int i = 0; i < D; i++)
        out.v[i] = sample_cbd_poly(seed, {base.domain, uint8_t(base.counter + i)}, params);
    return out;
}

} // namespace e8kem
