#ifndef E8KEM_E8_HPP
#define E8KEM_E8_HPP

#include <array>
#include <cstdint>

#include "e8kem/params.hpp"

namespace e8kem {

using Vec8 = std::array<int64_t, 8>;

/**
 * A point of (1/den) * Z^8: value_i = num[i] / den. Protocol points always
 * have den 1 or 2; the CVP core accepts arbitrary positive denominators so
 * quantization at any integer scale stays exact.
 */
struct Block8 {
    Vec8 num{};
    int64_t den = 1;

    bool operator==(const Block8&) const = default;
};

/**
 * The E8 generator used throughout, in half-unit coordinates (every entry
 * doubled so the matrix is integral):
 *
 *   rows 0..6:  2*e0, -e0+e1, -e1+e2, ..., -e5+e6
 *   row  7:     (1/2, ..., 1/2)
 *
 * det = 1; basis coordinates of a lattice point are recovered exactly by
 * back substitution.
 */
const std::array<Vec8, 8>& e8_basis_half();

/**
 * The 240 Voronoi-relevant vectors in half-unit coordinates. The first 112
 * are the (+-1, +-1, 0^6) patterns (type 1), the remaining 128 the (+-1/2)^8
 * patterns with an even number of minus signs (type 2).
 */
const std::array<Vec8, 240>& relevant_vectors_half();
inline constexpr int VR1_COUNT = 112;
inline constexpr int VR2_COUNT = 128;

/**
 * Closest E8 point to num/den, in half-unit coordinates.
 *
 * Decodes to D8 and to D8 + g (g the all-halves glue vector) and keeps the
 * closer candidate. All comparisons are exact integer arithmetic. The result
 * is deterministic on Voronoi boundaries: rounding sends halves up, the D8
 * parity fix re-rounds the coordinate with the largest rounding error
 * (lowest index on ties, toward +1 when the error is zero), and an exact
 * D8-vs-glue distance tie keeps the lexicographically smaller point. The
 * lexicographic rule makes the decoder commute with all lattice
 * translations, ties included; the reconciliation identities rely on that.
 */
Vec8 cvp_e8_half(const Vec8& num, int64_t den);

/// cvp_e8_half wrapped in Block8 form; result den is 2, or 1 if integral.
Block8 cvp_e8(const Block8& x);

/// Nearest point of scale*E8 to x, computed without rounding error.
/// scale must be a positive even integer so the result is integral.
Block8 quantize_scaled(const Block8& x, int64_t scale);

/// Basis coordinates z with z*E = lambda; rejects points outside E8.
Vec8 e8_coords(const Block8& lambda);

/**
 * Coset label of a point of s1*E8 in (s1*E8) / (s2*E8): basis coordinates
 * of point/s1 reduced mod 2^(p-1), componentwise, into [0, 2^(p-1)).
 */
Vec8 hint_label(const Block8& l1_point, const Params& params);

/// Canonical lift of a hint label: s1 * (label * E). Both sides of the
/// protocol must use this exact lift; changing it is a wire-format break.
Block8 hint_lift(const Vec8& label, const Params& params);

/**
 * Coset label of a point of s2*E8 in (s2*E8) / (q*Z^8), one byte.
 *
 * Coordinates reduced mod q are multiples of q/4; with t_i = coord_i/(q/4)
 * in {0..3}, all t_i share one parity g (the glue bit) and x_i = (t_i - g)/2
 * has even sum. The byte packs x_0..x_6 in bits 0..6 and g in bit 7; x_7 is
 * implied by parity.
 */
uint8_t key_label(const Block8& l2_point, const Params& params);

/// The unique representative of a key label in s2*E8 with coordinates
/// in [0, q)^8. All 256 byte values are valid.
Block8 key_lift(uint8_t label, const Params& params);

} // namespace e8kem

#endif
