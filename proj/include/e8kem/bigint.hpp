#ifndef E8KEM_BIGINT_HPP
#define E8KEM_BIGINT_HPP

#include <cstdint>
#include <vector>

namespace e8kem {

// Unsigned arbitrary-precision integer, little-endian 64-bit limbs.
// Just enough arithmetic for exact dyadic probability bookkeeping:
// add, multiply, shift, compare, and a log2 accurate to double precision.
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(uint64_t value);
    static BigUint from_u128(unsigned __int128 value);

    bool is_zero() const { return limbs_.empty(); }
    size_t bit_length() const;

    BigUint& operator+=(const BigUint& other);
    BigUint operator+(const BigUint& other) const;
    BigUint operator*(const BigUint& other) const;
    BigUint operator<<(uint64_t bits) const;

    bool operator==(const BigUint& other) const { return limbs_ == other.limbs_; }

    /// log2 of the value, accurate to ~2^-50 relative; -inf for zero.
    double log2() const;

    const std::vector<uint64_t>& limbs() const { return limbs_; }

private:
    void normalize();

    std::vector<uint64_t> limbs_;
};

} // namespace e8kem

#endif
