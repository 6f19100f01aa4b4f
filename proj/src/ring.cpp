#include "e8kem/ring.hpp"

namespace e8kem {

namespace {

// q is a power of two, so (x & (q-1)) reduces any two's-complement value
// into [0, q).
inline uint16_t reduce(int64_t x, uint32_t q) {
    return uint16_t(uint64_t(x) & (q - 1));
}

constexpr size_t KARATSUBA_CUTOFF = 32;

void plain_mul_schoolbook(const int64_t* a, const int64_t* b, int64_t* out, size_t n) {
    for (size_t t = 0; t < 2 * n - 1; t++)
        out[t] = 0;
    for (size_t i = 0; i < n; i++)
        for (size_t j = 0; j < n; j++)
            out[i + j] += a[i] * b[j];
}

// Plain (non-cyclic) product of length-n slices into out[0 .. 2n-2].
// scratch must hold 4n entries.
void plain_mul(const int64_t* a, const int64_t* b, int64_t* out, size_t n, int64_t* scratch) {
    if (n <= KARATSUBA_CUTOFF) {
        plain_mul_schoolbook(a, b, out, n);
        return;
    }
    const size_t h = n / 2;
    int64_t* asum = scratch;           // h
    int64_t* bsum = scratch + h;       // h
    int64_t* mid = scratch + 2 * h;    // 2h - 1
    int64_t* rest = scratch + 4 * h;

    for (size_t i = 0; i < h; i++) {
        asum[i] = a[i] + a[h + i];
        bsum[i] = b[i] + b[h + i];
    }
    // out = lo || hi, computed in place
    plain_mul(a, b, out, h, rest);
    out[2 * h - 1] = 0;
    plain_mul(a + h, b + h, out + n, h, rest);
    plain_mul(asum, bsum, mid, h, rest);
    for (size_t i = 0; i < 2 * h - 1; i++)
        mid[i] -= out[i] + out[n + i];
    for (size_t i = 0; i < 2 * h - 1; i++)
        out[h + i] += mid[i];
}

Poly negacyclic_fold(const int64_t* prod, const Params& params) {
    Poly out;
    for (int t = 0; t < N; t++) {
        int64_t v = prod[t];
        if (t + N < 2 * N - 1)
            v -= prod[t + N];
        out.c[t] = reduce(v, params.q);
    }
    return out;
}

} // namespace

Poly poly_add(const Poly& a, const Poly& b, const Params& params) {
    Poly out;
    for (int i = 0; i < N; i++)
        out.c[i] = reduce(int64_t(a.c[i]) + b.c[i], params.q);
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b, const Params& params) {
    Poly out;
    for (int i = 0; i < N; i++)
        out.c[i] = reduce(int64_t(a.c[i]) - b.c[i], params.q);
    return out;
}

Poly poly_mul_schoolbook(const Poly& a, const Poly& b, const Params& params) {
    int64_t av[N], bv[N], prod[2 * N];
    for (int i = 0; i < N; i++) {
        av[i] = a.c[i];
        bv[i] = b.c[i];
    }
    prod[2 * N - 1] = 0;
    plain_mul_schoolbook(av, bv, prod, N);
    return negacyclic_fold(prod, params);
}

Poly poly_mul(const Poly& a, const Poly& b, const Params& params) {
    int64_t av[N], bv[N], prod[2 * N], scratch[8 * N];
    for (int i = 0; i < N; i++) {
        av[i] = a.c[i];
        bv[i] = b.c[i];
    }
    prod[2 * N - 1] = 0;
    plain_mul(av, bv, prod, N, scratch);
    return negacyclic_fold(prod, params);
}

PolyVec mat_vec_mul(const PolyMat& a, const PolyVec& x, bool transpose, const Params& params) {
    PolyVec out;
    for (int i = 0; i < D; i++)
        for (int j = 0; j < D; j++) {
            const Poly& entry = transpose ? a.m[j][i] : a.m[i][j];
            out.v[i] = poly_add(out.v[i], poly_mul(entry, x.v[j], params), params);
        }
    return out;
}

Poly dot(const PolyVec& x, const PolyVec& y, const Params& params) {
    Poly out;
    for (int i = 0; i < D; i++)
        out = poly_add(out, poly_mul(x.v[i], y.v[i], params), params);
    return out;
}

SplitBlocks split(const Poly& a) {
    SplitBlocks blocks;
    for (int kappa = 0; kappa < L; kappa++)
        for (int j = 0; j < BLOCK_DIM; j++)
            blocks[kappa][j] = a.c[kappa + j * L];
    return blocks;
}

Poly interleave(const SplitBlocks& blocks) {
    Poly a;
    for (int kappa = 0; kappa < L; kappa++)
        for (int j = 0; j < BLOCK_DIM; j++)
            a.c[kappa + j * L] = uint16_t(blocks[kappa][j]);
    return a;
}

} // namespace e8kem
