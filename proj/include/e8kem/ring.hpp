#ifndef E8KEM_RING_HPP
#define E8KEM_RING_HPP

#include <array>
#include <cstdint>

#include "e8kem/params.hpp"

namespace e8kem {

// Element of R_q = Z_q[X]/(X^N + 1); coefficients kept reduced in [0, q).
struct Poly {
    std::array<uint16_t, N> c{};

    bool operator==(const Poly&) const = default;
};

struct PolyVec {
    std::array<Poly, D> v{};

    bool operator==(const PolyVec&) const = default;
};

// Row-major d x d matrix over R_q.
struct PolyMat {
    std::array<std::array<Poly, D>, D> m{};
};

Poly poly_add(const Poly& a, const Poly& b, const Params& params);
Poly poly_sub(const Poly& a, const Poly& b, const Params& params);

// Negacyclic product in R_q. poly_mul uses the Karatsuba path; the
// schoolbook version is the reference it must match bit for bit.
Poly poly_mul(const Poly& a, const Poly& b, const Params& params);
Poly poly_mul_schoolbook(const Poly& a, const Poly& b, const Params& params);

// y = A*x, or A^T*x when transpose is set.
PolyVec mat_vec_mul(const PolyMat& a, const PolyVec& x, bool transpose, const Params& params);

// Inner product x_1*y_1 + ... + x_d*y_d.
Poly dot(const PolyVec& x, const PolyVec& y, const Params& params);

// Polynomial splitting: block kappa collects the coefficients with index
// congruent to kappa mod L, i.e. split(a)[kappa][j] = a[kappa + j*L].
using SplitBlocks = std::array<std::array<int64_t, BLOCK_DIM>, L>;

SplitBlocks split(const Poly& a);
Poly interleave(const SplitBlocks& blocks);

} // namespace e8kem

#endif
