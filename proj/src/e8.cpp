#include "e8kem/e8.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace e8kem {

namespace {

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    return (r != 0 && r < 0) ? q - 1 : q;
}

// Nearest point of D8 = {z in Z^8 : sum(z) even} to num/den, with the fixed
// rounding conventions documented on cvp_e8_half.
Vec8 nearest_d8(const Vec8& num, int64_t den) {
    Vec8 r;
    int64_t err[8];
    int64_t parity = 0;
    for (int i = 0; i < 8; i++) {
        r[i] = floor_div(2 * num[i] + den, 2 * den);
        err[i] = num[i] - r[i] * den; // rounding error * den, in [-den/2, den/2)
        parity ^= r[i] & 1;
    }
    if (parity & 1) {
        int worst = 0;
        int64_t worst_abs = -1;
        for (int i = 0; i < 8; i++) {
            int64_t a = std::abs(err[i]);
            if (a > worst_abs) {
                worst_abs = a;
                worst = i;
            }
        }
        r[worst] += err[worst] >= 0 ? 1 : -1;
    }
    return r;
}

inline int64_t dist_sq_half(const Vec8& num, int64_t den, const Vec8& half) {
    // squared distance scaled by (2*den)^2
    int64_t sum = 0;
    for (int i = 0; i < 8; i++) {
        int64_t diff = 2 * num[i] - half[i] * den;
        sum += diff * diff;
    }
    return sum;
}

bool lex_less(const Vec8& a, const Vec8& b) {
    for (int i = 0; i < 8; i++)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

// Half-unit coordinates of lambda; rejects anything off the half-integer grid.
Vec8 half_units(const Block8& point, const char* what) {
    Vec8 h;
    for (int i = 0; i < 8; i++) {
        int64_t doubled = 2 * point.num[i];
        if (doubled % point.den != 0)
            throw std::invalid_argument(std::string(what) + ": coordinates are not half-integers");
        h[i] = doubled / point.den;
    }
    return h;
}

} // namespace

const std::array<Vec8, 8>& e8_basis_half() {
    static const std::array<Vec8, 8> basis = [] {
        std::array<Vec8, 8> rows{};
        rows[0] = {4, 0, 0, 0, 0, 0, 0, 0};
        for (int i = 1; i < 7; i++) {
            rows[i][i - 1] = -2;
            rows[i][i] = 2;
        }
        rows[7] = {1, 1, 1, 1, 1, 1, 1, 1};
        return rows;
    }();
    return basis;
}

const std::array<Vec8, 240>& relevant_vectors_half() {
    static const std::array<Vec8, 240> vectors = [] {
        std::array<Vec8, 240> out{};
        int idx = 0;
        for (int i = 0; i < 8; i++)
            for (int j = i + 1; j < 8; j++)
                for (int si = -1; si <= 1; si += 2)
                    for (int sj = -1; sj <= 1; sj += 2) {
                        Vec8 v{};
                        v[i] = 2 * si;
                        v[j] = 2 * sj;
                        out[idx++] = v;
                    }
        for (int mask = 0; mask < 256; mask++) {
            if (__builtin_popcount(mask) % 2 != 0)
                continue;
            Vec8 v;
            for (int i = 0; i < 8; i++)
                v[i] = (mask >> i) & 1 ? -1 : 1;
            out[idx++] = v;
        }
        return out;
    }();
    return vectors;
}

Vec8 cvp_e8_half(const Vec8& num, int64_t den) {
    if (den <= 0)
        throw std::invalid_argument("cvp_e8: denominator must be positive");

    // D8 candidate.
    Vec8 d8 = nearest_d8(num, den);
    Vec8 cand_a;
    for (int i = 0; i < 8; i++)
        cand_a[i] = 2 * d8[i];

    // Glue candidate: g + nearest D8 point to x - g.
    Vec8 shifted;
    for (int i = 0; i < 8; i++)
        shifted[i] = 2 * num[i] - den;
    Vec8 d8g = nearest_d8(shifted, 2 * den);
    Vec8 cand_b;
    for (int i = 0; i < 8; i++)
        cand_b[i] = 2 * d8g[i] + 1;

    int64_t da = dist_sq_half(num, den, cand_a);
    int64_t db = dist_sq_half(num, den, cand_b);
    if (da != db)
        return da < db ? cand_a : cand_b;
    return lex_less(cand_a, cand_b) ? cand_a : cand_b;
}

Block8 cvp_e8(const Block8& x) {
    Vec8 h = cvp_e8_half(x.num, x.den);
    bool integral = true;
    for (int i = 0; i < 8; i++)
        integral = integral && h[i] % 2 == 0;
    Block8 out;
    if (integral) {
        for (int i = 0; i < 8; i++)
            out.num[i] = h[i] / 2;
        out.den = 1;
    } else {
        out.num = h;
        out.den = 2;
    }
    return out;
}

Block8 quantize_scaled(const Block8& x, int64_t scale) {
    if (scale <= 0 || scale % 2 != 0)
        throw std::invalid_argument("quantize_scaled: scale must be a positive even integer");
    Vec8 h = cvp_e8_half(x.num, x.den * scale);
    Block8 out;
    for (int i = 0; i < 8; i++)
        out.num[i] = h[i] * (scale / 2);
    out.den = 1;
    return out;
}

Vec8 e8_coords(const Block8& lambda) {
    Vec8 h = half_units(lambda, "e8_coords");
    for (int i = 0; i < 7; i++)
        if ((h[i] - h[7]) % 2 != 0)
            throw std::invalid_argument("e8_coords: point is not in E8 (mixed parity)");

    Vec8 z;
    z[7] = h[7];
    z[6] = (h[6] - h[7]) / 2;
    for (int j = 5; j >= 1; j--)
        z[j] = (h[j] - h[7]) / 2 + z[j + 1];
    int64_t top = (h[0] - h[7]) / 2 + z[1];
    if (top % 2 != 0)
        throw std::invalid_argument("e8_coords: point is not in E8 (odd D8 sum)");
    z[0] = top / 2;
    return z;
}

Vec8 hint_label(const Block8& l1_point, const Params& params) {
    const int64_t s1 = params.s1;
    Block8 scaled_down;
    scaled_down.den = l1_point.den * s1;
    scaled_down.num = l1_point.num;
    Vec8 z = e8_coords(scaled_down);

    const int64_t range = params.hint_coord_range();
    Vec8 label;
    for (int i = 0; i < 8; i++)
        label[i] = ((z[i] % range) + range) % range;
    return label;
}

Block8 hint_lift(const Vec8& label, const Params& params) {
    const int64_t range = params.hint_coord_range();
    const auto& basis = e8_basis_half();
    Vec8 h{};
    for (int i = 0; i < 8; i++) {
        if (label[i] < 0 || label[i] >= range)
            throw std::invalid_argument("hint_lift: coordinate out of range [0, 2^(p-1))");
        for (int j = 0; j < 8; j++)
            h[j] += label[i] * basis[i][j];
    }
    Block8 out;
    const int64_t half_s1 = params.s1 / 2;
    for (int i = 0; i < 8; i++)
        out.num[i] = h[i] * half_s1;
    out.den = 1;
    return out;
}

uint8_t key_label(const Block8& l2_point, const Params& params) {
    Vec8 h = half_units(l2_point, "key_label");
    const int64_t q = params.q;
    const int64_t quarter = q / 4;

    int t[8];
    for (int i = 0; i < 8; i++) {
        if (h[i] % 2 != 0)
            throw std::invalid_argument("key_label: point is not in the coding lattice");
        int64_t coord = ((h[i] / 2) % q + q) % q;
        if (coord % quarter != 0)
            throw std::invalid_argument("key_label: point is not in the coding lattice");
        t[i] = int(coord / quarter);
    }
    const int glue = t[0] & 1;
    int parity = 0;
    uint8_t byte = uint8_t(glue) << 7;
    for (int i = 0; i < 8; i++) {
        if ((t[i] & 1) != glue)
            throw std::invalid_argument("key_label: point is not in the coding lattice (mixed parity)");
        int x = (t[i] - glue) / 2;
        parity ^= x;
        if (i < 7)
            byte |= uint8_t(x) << i;
    }
    if (parity != 0)
        throw std::invalid_argument("key_label: point is not in the coding lattice (odd D8 sum)");
    return byte;
}

Block8 key_lift(uint8_t label, const Params& params) {
    const int64_t quarter = params.q / 4;
    const int glue = label >> 7;
    int x[8];
    int parity = 0;
    for (int i = 0; i < 7; i++) {
        x[i] = (label >> i) & 1;
        parity ^= x[i];
    }
    x[7] = parity;
    Block8 out;
    for (int i = 0; i < 8; i++)
        out.num[i] = (2 * x[i] + glue) * quarter;
    out.den = 1;
    return out;
}

} // namespace e8kem
