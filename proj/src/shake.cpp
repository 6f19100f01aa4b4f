#include "e8kem/shake.hpp"

namespace e8kem {

namespace {

constexpr uint64_t ROUND_CONSTANTS[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rotation offsets, indexed [x][y].
constexpr unsigned RHO[5][5] = {
    {0, 36, 3, 41, 18},
    {1, 44, 10, 45, 2},
    {62, 6, 43, 15, 61},
    {28, 55, 25, 21, 56},
    {27, 20, 39, 8, 14},
};

inline uint64_t rotl(uint64_t v, unsigned s) {
    return s == 0 ? v : (v << s) | (v >> (64 - s));
}

} // namespace

void Shake128::permute() {
    uint64_t* a = state_;
    for (int round = 0; round < 24; round++) {
        // theta
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; x++)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; x++)
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
        for (int x = 0; x < 5; x++)
            for (int y = 0; y < 5; y++)
                a[x + 5 * y] ^= d[x];
        // rho + pi
        uint64_t b[25];
        for (int x = 0; x < 5; x++)
            for (int y = 0; y < 5; y++)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(a[x + 5 * y], RHO[x][y]);
        // chi
        for (int x = 0; x < 5; x++)
            for (int y = 0; y < 5; y++)
                a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
        // iota
        a[0] ^= ROUND_CONSTANTS[round];
    }
}

void Shake128::absorb(std::span<const uint8_t> data) {
    for (uint8_t byte : data) {
        state_[pos_ / 8] ^= uint64_t(byte) << (8 * (pos_ % 8));
        if (++pos_ == RATE) {
            permute();
            pos_ = 0;
        }
    }
}

void Shake128::squeeze(std::span<uint8_t> out) {
    if (!squeezing_) {
        // pad10*1 with the SHAKE domain bits
        state_[pos_ / 8] ^= uint64_t(0x1f) << (8 * (pos_ % 8));
        state_[(RATE - 1) / 8] ^= uint64_t(0x80) << (8 * ((RATE - 1) % 8));
        permute();
        pos_ = 0;
        squeezing_ = true;
    }
    for (uint8_t& byte : out) {
        if (pos_ == RATE) {
            permute();
            pos_ = 0;
        }
        byte = uint8_t(state_[pos_ / 8] >> (8 * (pos_ % 8)));
        pos_++;
    }
}

void Shake128::hash(std::span<const uint8_t> in, std::span<uint8_t> out) {
    Shake128 xof;
    xof.absorb(in);
    xof.squeeze(out);
}

} // namespace e8kem
