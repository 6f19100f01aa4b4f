#include <random>
#include <set>
#include <vector>

#include "e8kem/e8.hpp"
#include "testutil.hpp"

using namespace e8kem;
using namespace testutil;

namespace {

std::mt19937_64 rng(0x90553e7);

// Exact Voronoi membership: x - y inside V(E8) iff <x - y, v> <= |v|^2 / 2
// for all 240 relevant vectors. num/den is x, half is y in half-units; the
// inequality scaled by 4*den is 2*sum((2n - h*den)*hv) <= den*sum(hv^2).
bool in_voronoi(const Vec8& num, int64_t den, const Vec8& half) {
    for (const Vec8& hv : relevant_vectors_half()) {
        int64_t lhs = 0, norm = 0;
        for (int i = 0; i < 8; i++) {
            lhs += (2 * num[i] - half[i] * den) * hv[i];
            norm += hv[i] * hv[i];
        }
        if (2 * lhs > den * norm)
            return false;
    }
    return true;
}

int64_t dist_sq_times_4den2(const Vec8& num, int64_t den, const Vec8& half) {
    int64_t sum = 0;
    for (int i = 0; i < 8; i++) {
        const int64_t diff = 2 * num[i] - half[i] * den;
        sum += diff * diff;
    }
    return sum;
}

// All E8 points with squared norm <= 4, by pruned search over half-units.
std::vector<Vec8> small_lattice_points() {
    std::vector<Vec8> points;
    Vec8 h{};
    auto is_e8 = [](const Vec8& v) {
        const int64_t parity = v[0] & 1;
        int64_t sum = 0;
        for (int i = 0; i < 8; i++) {
            if ((v[i] & 1) != parity)
                return false;
            sum += parity ? (v[i] - 1) / 2 : v[i] / 2;
        }
        return sum % 2 == 0;
    };
    // half-unit norms: sum h^2 <= 16
    std::vector<Vec8> stack;
    auto rec = [&](auto&& self, int idx, int64_t norm) -> void {
        if (idx == 8) {
            if (is_e8(h))
                points.push_back(h);
            return;
        }
        for (int64_t c = -4; c <= 4; c++) {
            if (norm + c * c > 16)
                continue;
            h[idx] = c;
            self(self, idx + 1, norm + c * c);
        }
    };
    rec(rec, 0, 0);
    return points;
}

} // namespace

int main() {
    const Params& params = preset(DEFAULT_PRESET);

    // Basis sanity: an exact inverse exists (round-trip below) and the
    // half-unit determinant is 2^8, i.e. det(E) = 1.
    {
        // Bareiss elimination on the integer half-unit matrix.
        long long m[8][8];
        const auto& basis = e8_basis_half();
        for (int i = 0; i < 8; i++)
            for (int j = 0; j < 8; j++)
                m[i][j] = basis[i][j];
        long long prev = 1;
        bool ok = true;
        for (int k = 0; k < 8 && ok; k++) {
            if (m[k][k] == 0) {
                for (int r = k + 1; r < 8; r++)
                    if (m[r][k] != 0) {
                        for (int c = 0; c < 8; c++)
                            std::swap(m[k][c], m[r][c]);
                        for (int c = 0; c < 8; c++)
                            m[k][c] = -m[k][c];
                        break;
                    }
            }
            ok = m[k][k] != 0;
            for (int i = k + 1; i < 8 && ok; i++)
                for (int j = k + 1; j < 8; j++)
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            prev = m[k][k];
        }
        check(ok && m[7][7] == 256, "det of half-unit basis is 256 (vol E8 = 1)");
    }

    // Relevant vector counts and the defining inequality against all small
    // lattice vectors.
    {
        const auto& vrs = relevant_vectors_half();
        std::set<Vec8> unique(vrs.begin(), vrs.end());
        check_eq(size_t(240), unique.size(), "240 distinct relevant vectors");

        int type1 = 0, type2 = 0;
        for (const Vec8& v : vrs) {
            int nonzero = 0;
            for (int i = 0; i < 8; i++)
                nonzero += v[i] != 0;
            (nonzero == 2 ? type1 : type2)++;
        }
        check(type1 == VR1_COUNT && type2 == VR2_COUNT, "112 type-1 + 128 type-2");

        const auto small = small_lattice_points();
        check_eq(size_t(1 + 240 + 2160), small.size(),
                 "norm <= 4 shell sizes (origin + 240 + 2160)");

        bool ok = true;
        for (const Vec8& v : vrs) {
            for (const Vec8& x : small) {
                bool is_zero = true, is_v = true;
                for (int i = 0; i < 8; i++) {
                    is_zero = is_zero && x[i] == 0;
                    is_v = is_v && x[i] == v[i];
                }
                if (is_zero || is_v)
                    continue;
                int64_t inner = 0, norm = 0;
                for (int i = 0; i < 8; i++) {
                    inner += x[i] * v[i];
                    norm += x[i] * x[i];
                }
                ok = ok && inner < norm; // <x,v> < |x|^2 in quarter units
            }
        }
        check(ok, "each relevant vector satisfies <x,v> < |x|^2 on the small shells");
    }

    // cvp examples
    {
        Vec8 tenth;
        tenth.fill(1); // 0.1 each
        Vec8 zero{};
        check(cvp_e8_half(tenth, 10) == zero, "(0.1)^8 decodes to 0");

        Vec8 g;
        g.fill(1); // g in half-units
        check(cvp_e8_half(g, 2) == g, "g is fixed");

        Block8 b{{3, 0, 0, 0, 0, 0, 0, 0}, 2}; // (1.5, 0^7)
        Block8 y = cvp_e8(b);
        check(dist_sq_times_4den2(b.num, b.den, {y.num[0] * 2 / y.den, y.num[1] * 2 / y.den,
                                                 y.num[2] * 2 / y.den, y.num[3] * 2 / y.den,
                                                 y.num[4] * 2 / y.den, y.num[5] * 2 / y.den,
                                                 y.num[6] * 2 / y.den, y.num[7] * 2 / y.den}) <=
                  4 * b.den * b.den,
              "decode of (1.5,0^7) within covering distance");

        // scaled quantizer basics
        Block8 zero8{{0, 0, 0, 0, 0, 0, 0, 0}, 1};
        check(quantize_scaled(zero8, params.s1) == zero8, "quantizer fixes 0");
        Block8 lattice_point = key_lift(0x5a, params);
        check(quantize_scaled(lattice_point, params.s2) == lattice_point,
              "quantizer fixes scaled lattice points");
        check_throws([&] { quantize_scaled(zero8, 3); }, "odd quantizer scale rejected");
    }

    // Voronoi-membership oracle, covering radius, idempotence, determinism,
    // translation equivariance, and the inequality/nearest-point
    // equivalence that makes the 240 vectors determine the cell.
    {
        bool member_ok = true, radius_ok = true, idem_ok = true, equi_ok = true, det_ok = true;
        bool determine_ok = true;
        for (int trial = 0; trial < 100000; trial++) {
            const int64_t den = 1 + int64_t(rng() % 64);
            Vec8 num;
            for (int i = 0; i < 8; i++)
                num[i] = int64_t(rng() % (8 * den + 1)) - 4 * den; // [-4, 4]
            Vec8 y = cvp_e8_half(num, den);

            member_ok = member_ok && in_voronoi(num, den, y);
            radius_ok = radius_ok && dist_sq_times_4den2(num, den, y) <= 4 * den * den;
            det_ok = det_ok && cvp_e8_half(num, den) == y;

            if (trial < 20000) {
                // idempotence: lattice output decodes to itself
                Vec8 again = cvp_e8_half(y, 2);
                idem_ok = idem_ok && again == y;

                // translation by a random relevant vector (lattice point)
                const Vec8& lam = relevant_vectors_half()[rng() % 240];
                Vec8 shifted;
                for (int i = 0; i < 8; i++)
                    shifted[i] = 2 * num[i] + lam[i] * den; // x + lam over 2*den
                Vec8 ys = cvp_e8_half(shifted, 2 * den);
                bool same = true;
                for (int i = 0; i < 8; i++)
                    same = same && ys[i] == y[i] + lam[i];
                equi_ok = equi_ok && same;

                // a neighbour y' of the decode: x - y' lies in the closed
                // cell exactly when y' is also a nearest point
                Vec8 neighbour;
                const Vec8& step = relevant_vectors_half()[rng() % 240];
                for (int i = 0; i < 8; i++)
                    neighbour[i] = y[i] + step[i];
                const bool inside = in_voronoi(num, den, neighbour);
                const bool nearest = dist_sq_times_4den2(num, den, neighbour) ==
                                     dist_sq_times_4den2(num, den, y);
                determine_ok = determine_ok && inside == nearest;
            }
        }
        check(member_ok, "10^5 decodes pass the 240 Voronoi inequalities");
        check(radius_ok, "squared decode distance never exceeds 1");
        check(idem_ok, "idempotent on lattice points");
        check(equi_ok, "equivariant under lattice translations (ties included)");
        check(det_ok, "same input, same output");
        check(determine_ok, "inequalities hold exactly for nearest points");
    }

    // e8_coords
    {
        const auto& basis = e8_basis_half();
        check(e8_coords({{2, 0, 0, 0, 0, 0, 0, 0}, 1}) == Vec8{1, 0, 0, 0, 0, 0, 0, 0},
              "coords of basis row 0");
        check(e8_coords({{1, 1, 1, 1, 1, 1, 1, 1}, 2}) == Vec8{0, 0, 0, 0, 0, 0, 0, 1},
              "coords of g");
        check_throws([] { e8_coords({{1, 0, 0, 0, 0, 0, 0, 0}, 1}); },
                     "non-lattice point rejected");

        bool ok = true;
        for (int trial = 0; trial < 2000 && ok; trial++) {
            Vec8 z;
            for (int i = 0; i < 8; i++)
                z[i] = int64_t(rng() % 17) - 8;
            Vec8 h{};
            for (int i = 0; i < 8; i++)
                for (int j = 0; j < 8; j++)
                    h[j] += z[i] * basis[i][j];
            ok = e8_coords({h, 2}) == z;
        }
        check(ok, "coords round-trip on random integer combinations");
    }

    // hint labels: exhaustive bijectivity at p = 2 and p = 3
    {
        for (int p : {2, 3}) {
            Params small = make_params(2048, 2, p);
            const int64_t range = small.hint_coord_range();
            bool ok = true;
            std::set<std::vector<int64_t>> seen;
            Vec8 label{};
            while (true) {
                Block8 lifted = hint_lift(label, small);
                Vec8 back = hint_label(lifted, small);
                ok = ok && back == label;
                seen.insert(std::vector<int64_t>(back.begin(), back.end()));

                int pos = 0;
                while (pos < 8 && label[pos] == range - 1)
                    label[pos++] = 0;
                if (pos == 8)
                    break;
                label[pos]++;
            }
            double count = 1;
            for (int i = 0; i < 8; i++)
                count *= double(range);
            ok = ok && seen.size() == size_t(count);
            check(ok, "hint label/lift bijective over all labels at p = " + std::to_string(p));
        }

        check(hint_label({{0, 0, 0, 0, 0, 0, 0, 0}, 1}, params) == Vec8{},
              "zero labels as zero");

        // a coding-lattice point labels as zero
        const auto& basis = e8_basis_half();
        Vec8 h;
        const int64_t mult = params.hint_coord_range();
        for (int j = 0; j < 8; j++)
            h[j] = mult * basis[0][j];
        Block8 lambda2{{}, 1};
        for (int j = 0; j < 8; j++)
            lambda2.num[j] = h[j] * int64_t(params.s1) / 2;
        check(hint_label(lambda2, params) == Vec8{}, "coding-lattice point labels as zero");

        check_throws([&] { hint_lift({0, 0, 0, 0, 0, 0, 0, 99}, params); },
                     "out-of-range hint label rejected");

        // canonical lifts stay on the integer grid (multiples of s1/2)
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; trial++) {
            Vec8 label;
            for (int i = 0; i < 8; i++)
                label[i] = int64_t(rng() % params.hint_coord_range());
            Block8 lifted = hint_lift(label, params);
            ok = lifted.den == 1;
            for (int i = 0; i < 8 && ok; i++)
                ok = lifted.num[i] % (int64_t(params.s1) / 2) == 0;
        }
        check(ok, "hint lifts are integer multiples of s1/2");
    }

    // key labels
    {
        check_eq(0, int(key_label({{0, 0, 0, 0, 0, 0, 0, 0}, 1}, params)), "0 -> 0x00");

        Block8 glue;
        glue.den = 1;
        for (int i = 0; i < 8; i++)
            glue.num[i] = params.q / 4;
        check_eq(0x80, int(key_label(glue, params)), "s2*g -> 0x80");

        check(key_lift(0, params) == Block8{{0, 0, 0, 0, 0, 0, 0, 0}, 1}, "0x00 lifts to 0");

        bool ok = true;
        for (int byte = 0; byte < 256 && ok; byte++)
            ok = key_label(key_lift(uint8_t(byte), params), params) == byte;
        check(ok, "key_label(key_lift(b)) = b for all 256 bytes");

        // Enumerate the coding lattice mod q: exactly 256 residues out of the
        // 4^8 quarter-grid patterns, labelled bijectively.
        int members = 0;
        std::set<int> labels;
        ok = true;
        for (int pattern = 0; pattern < 65536; pattern++) {
            Block8 point;
            point.den = 1;
            for (int i = 0; i < 8; i++)
                point.num[i] = ((pattern >> (2 * i)) & 3) * int64_t(params.q) / 4;
            try {
                labels.insert(key_label(point, params));
                members++;
            } catch (const std::exception&) {
            }
        }
        check(ok && members == 256 && labels.size() == 256,
              "coding lattice mod q has 256 residues with distinct labels");

        check_throws([&] { key_label({{1, 0, 0, 0, 0, 0, 0, 0}, 1}, params); },
                     "mixed-parity point rejected");
    }

    return summary("test_e8");
}
