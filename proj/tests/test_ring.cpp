#include <random>

#include "e8kem/ring.hpp"
#include "testutil.hpp"

using namespace e8kem;
using namespace testutil;

namespace {

std::mt19937_64 rng(0xe8a11ce);

Poly random_poly(const Params& params) {
    Poly a;
    for (int i = 0; i < N; i++)
        a.c[i] = uint16_t(rng() % params.q);
    return a;
}

// Independent wide-integer oracle for coefficientwise mod-q addition.
Poly add_oracle(const Poly& a, const Poly& b, const Params& params) {
    Poly out;
    for (int i = 0; i < N; i++)
        out.c[i] = uint16_t((uint64_t(a.c[i]) + uint64_t(b.c[i])) % params.q);
    return out;
}

// Direct negacyclic schoolbook oracle, written against the definition
// c_t = sum_{i+j = t} a_i b_j - sum_{i+j = t+N} a_i b_j.
Poly mul_oracle(const Poly& a, const Poly& b, const Params& params) {
    Poly out;
    for (int t = 0; t < N; t++) {
        long long acc = 0;
        for (int i = 0; i < N; i++) {
            const int j = t - i;
            if (j >= 0)
                acc += (long long)a.c[i] * b.c[j];
            else
                acc -= (long long)a.c[i] * b.c[j + N];
        }
        acc %= (long long)params.q;
        if (acc < 0)
            acc += params.q;
        out.c[t] = uint16_t(acc);
    }
    return out;
}

} // namespace

int main() {
    const Params& params = preset(DEFAULT_PRESET);

    // poly_add
    {
        Poly a = random_poly(params);
        Poly zero;
        check(poly_add(a, zero, params) == a, "a + 0 = a");

        Poly b;
        a.c[0] = uint16_t(params.q - 1);
        b.c[0] = 1;
        check_eq(0, int(poly_add(a, b, params).c[0]), "(q-1) + 1 wraps to 0");

        bool ok = true;
        for (int trial = 0; trial < 200 && ok; trial++) {
            Poly x = random_poly(params), y = random_poly(params);
            ok = poly_add(x, y, params) == add_oracle(x, y, params);
        }
        check(ok, "poly_add matches wide-integer oracle");
    }

    // poly_mul
    {
        Poly x, x255;
        x.c[1] = 1;    // X
        x255.c[255] = 1;
        Poly prod = poly_mul(x, x255, params);
        bool ok = prod.c[0] == params.q - 1;
        for (int i = 1; i < N; i++)
            ok = ok && prod.c[i] == 0;
        check(ok, "X * X^255 = -1");

        Poly one;
        one.c[0] = 1;
        Poly b = random_poly(params);
        check(poly_mul(one, b, params) == b, "1 * b = b");

        ok = true;
        for (int trial = 0; trial < 50 && ok; trial++) {
            Poly a = random_poly(params), c = random_poly(params);
            Poly karatsuba = poly_mul(a, c, params);
            ok = karatsuba == mul_oracle(a, c, params) &&
                 karatsuba == poly_mul_schoolbook(a, c, params);
        }
        check(ok, "karatsuba == schoolbook == direct oracle");
    }

    // ring axioms on 1000 random triples
    {
        bool ok = true;
        for (int trial = 0; trial < 1000 && ok; trial++) {
            Poly a = random_poly(params), b = random_poly(params), c = random_poly(params);
            ok = ok && poly_add(a, b, params) == poly_add(b, a, params);
            ok = ok && poly_add(poly_add(a, b, params), c, params) ==
                           poly_add(a, poly_add(b, c, params), params);
            ok = ok && poly_mul(a, b, params) == poly_mul(b, a, params);
            ok = ok && poly_mul(poly_mul(a, b, params), c, params) ==
                           poly_mul(a, poly_mul(b, c, params), params);
            ok = ok && poly_mul(a, poly_add(b, c, params), params) ==
                           poly_add(poly_mul(a, b, params), poly_mul(a, c, params), params);
        }
        check(ok, "commutativity, associativity, distributivity (1000 triples)");
    }

    // Multiplication by X is a right shift with a negated wrap term.
    {
        bool ok = true;
        Poly x;
        x.c[1] = 1;
        for (int trial = 0; trial < 50 && ok; trial++) {
            Poly a = random_poly(params), b = random_poly(params);
            Poly ab = poly_mul(a, b, params);
            Poly shifted = poly_mul(a, poly_mul(x, b, params), params);
            ok = shifted.c[0] == (params.q - ab.c[N - 1]) % params.q;
            for (int t = 1; t < N && ok; t++)
                ok = shifted.c[t] == ab.c[t - 1];
        }
        check(ok, "a * (X*b) is a shifted a*b with negated wrap");
    }

    // mat_vec_mul
    {
        PolyMat identity;
        for (int i = 0; i < D; i++)
            identity.m[i][i].c[0] = 1;
        PolyVec x;
        for (int i = 0; i < D; i++)
            x.v[i] = random_poly(params);
        check(mat_vec_mul(identity, x, false, params) == x, "identity matrix fixes x");

        PolyVec zero;
        PolyMat a;
        for (int i = 0; i < D; i++)
            for (int j = 0; j < D; j++)
                a.m[i][j] = random_poly(params);
        check(mat_vec_mul(a, zero, false, params) == zero, "A * 0 = 0");

        // transpose flag equals explicit transposition
        PolyMat at;
        for (int i = 0; i < D; i++)
            for (int j = 0; j < D; j++)
                at.m[i][j] = a.m[j][i];
        check(mat_vec_mul(a, x, true, params) == mat_vec_mul(at, x, false, params),
              "transpose flag matches explicit transpose");
    }

    // dot
    {
        PolyVec x, y, zero;
        for (int i = 0; i < D; i++) {
            x.v[i] = random_poly(params);
            y.v[i] = random_poly(params);
        }
        check(dot(x, zero, params) == Poly{}, "x . 0 = 0");

        PolyVec selector;
        selector.v[0].c[0] = 1;
        check(dot(selector, y, params) == y.v[0], "selector picks y_1");

        Poly sum;
        for (int i = 0; i < D; i++)
            sum = poly_add(sum, poly_mul(x.v[i], y.v[i], params), params);
        check(dot(x, y, params) == sum, "dot matches component sum");
    }

    // split / interleave
    {
        Poly constant;
        constant.c[0] = 1;
        SplitBlocks blocks = split(constant);
        bool ok = blocks[0][0] == 1;
        for (int kappa = 0; kappa < L; kappa++)
            for (int j = 0; j < BLOCK_DIM; j++)
                ok = ok && ((kappa == 0 && j == 0) || blocks[kappa][j] == 0);
        check(ok, "split of the constant 1");

        Poly spike;
        spike.c[33] = 5;
        check_eq(5, int(split(spike)[1][1]), "coefficient 33 lands in block 1 slot 1");

        ok = true;
        for (int trial = 0; trial < 200 && ok; trial++) {
            Poly a = random_poly(params);
            ok = interleave(split(a)) == a;
        }
        check(ok, "interleave(split(a)) = a");
    }

    return summary("test_ring");
}
