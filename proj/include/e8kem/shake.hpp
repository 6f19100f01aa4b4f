#ifndef E8KEM_SHAKE_HPP
#define E8KEM_SHAKE_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace e8kem {

// SHAKE-128 extendable-output function (FIPS 202).
// Absorb any number of times, then squeeze any number of times; the first
// squeeze closes the absorbing phase. Squeezing in chunks yields the same
// stream as one large squeeze.
class Shake128 {
public:
    Shake128() = default;

    void absorb(std::span<const uint8_t> data);
    void squeeze(std::span<uint8_t> out);

    // One-shot convenience.
    static void hash(std::span<const uint8_t> in, std::span<uint8_t> out);

private:
    static constexpr size_t RATE = 168;

    void permute();

    uint64_t state_[25] = {};
    size_t pos_ = 0;
    bool squeezing_ = false;
};

} // namespace e8kem

#endif
