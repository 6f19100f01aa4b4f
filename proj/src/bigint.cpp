#include "e8kem/bigint.hpp"

#include <cmath>
#include <limits>

namespace e8kem {

BigUint::BigUint(uint64_t value) {
    if (value != 0)
        limbs_.push_back(value);
}

BigUint BigUint::from_u128(unsigned __int128 value) {
    BigUint out;
    if (uint64_t lo = uint64_t(value); lo != 0 || value >> 64)
        out.limbs_.push_back(lo);
    if (uint64_t hi = uint64_t(value >> 64))
        out.limbs_.push_back(hi);
    return out;
}

void BigUint::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0)
        limbs_.pop_back();
}

size_t BigUint::bit_length() const {
    if (limbs_.empty())
        return 0;
    return 64 * (limbs_.size() - 1) + (64 - __builtin_clzll(limbs_.back()));
}

BigUint& BigUint::operator+=(const BigUint& other) {
    if (limbs_.size() < other.limbs_.size())
        limbs_.resize(other.limbs_.size(), 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < limbs_.size(); i++) {
        carry += limbs_[i];
        if (i < other.limbs_.size())
            carry += other.limbs_[i];
        limbs_[i] = uint64_t(carry);
        carry >>= 64;
    }
    if (carry)
        limbs_.push_back(uint64_t(carry));
    return *this;
}

BigUint BigUint::operator+(const BigUint& other) const {
    BigUint out = *this;
    out += other;
    return out;
}

BigUint BigUint::operator*(const BigUint& other) const {
    if (is_zero() || other.is_zero())
        return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); i++) {
        unsigned __int128 carry = 0;
        const uint64_t a = limbs_[i];
        for (size_t j = 0; j < other.limbs_.size(); j++) {
            carry += (unsigned __int128)a * other.limbs_[j] + out.limbs_[i + j];
            out.limbs_[i + j] = uint64_t(carry);
            carry >>= 64;
        }
        out.limbs_[i + other.limbs_.size()] = uint64_t(carry);
    }
    out.normalize();
    return out;
}

BigUint BigUint::operator<<(uint64_t bits) const {
    if (is_zero())
        return BigUint();
    const uint64_t limb_shift = bits / 64;
    const uint64_t bit_shift = bits % 64;
    BigUint out;
    out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); i++) {
        out.limbs_[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift != 0)
            out.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    out.normalize();
    return out;
}

double BigUint::log2() const {
    if (is_zero())
        return -std::numeric_limits<double>::infinity();
    // Fold the top (up to) 128 bits into a long double mantissa.
    const size_t n = limbs_.size();
    long double mantissa = 0;
    int used = 0;
    for (size_t i = n; i-- > 0 && used < 3; used++)
        mantissa = mantissa * 4294967296.0L * 4294967296.0L + limbs_[i];
    const long double exponent = 64.0L * (n - used);
    return double(std::log2(mantissa) + exponent);
}

} // namespace e8kem
