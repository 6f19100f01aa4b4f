#include "e8kem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace e8kem {

namespace {

using u128 = unsigned __int128;

inline double u128_to_double(u128 v) {
    return std::ldexp(double(uint64_t(v >> 64)), 64) + double(uint64_t(v));
}

// Numerators of psi_k over the denominator 2^(2k): binomial(2k, k+j).
std::vector<uint64_t> psi_numerators(int k) {
    std::vector<uint64_t> row(2 * k + 1);
    row[0] = 1;
    for (int n = 1; n <= 2 * k; n++)
        for (int j = n; j >= 1; j--)
            row[j] += row[j - 1];
    return row;
}

// Dense distribution over an integer grid with u128 numerators.
struct DistU {
    int64_t lo = 0; // value of index 0
    std::vector<u128> p;
};

// Coefficient of sigma_t attached to e_i for the representative v given in
// half-units: 2 * v_half[(t-i) mod 8] * (-1)^[t < i].
int coeff_matrix(const Vec8& rep_half, int i, int t) {
    int64_t c = 2 * rep_half[((t - i) % 8 + 8) % 8];
    return int(t < i ? -c : c);
}

struct BlockTermKey {
    int k;
    Vec8 rep;
    bool operator<(const BlockTermKey& other) const {
        if (k != other.k)
            return k < other.k;
        return rep < other.rep;
    }
};

// ---- type 1: two-support representatives, exact cycle DP ----------------
//
// Each e_i couples exactly two sigma coordinates, so the coupling graph on
// sigma indices is a union of cycles; the joint distribution factors as a
// product over cycles, each computed by a transfer walk that keeps the
// first sigma of the cycle in the state for the closing edge.

DistU type1_cycle_dp(const Vec8& rep_half, int k) {
    const auto psi = psi_numerators(k);

    // Reduced coefficients: entries of rep are +-1, G entries +-4, so work
    // on the z/4 grid with coefficients +-1.
    int reduced[8][8];
    std::array<std::array<int, 2>, 8> support{}; // the two sigma indices per e row
    for (int i = 0; i < 8; i++) {
        int found = 0;
        for (int t = 0; t < 8; t++) {
            int c = coeff_matrix(rep_half, i, t);
            if (c % 4 != 0)
                throw std::invalid_argument("block_term_dist: not a type-1 representative");
            reduced[i][t] = c / 4;
            if (c != 0) {
                if (found == 2)
                    throw std::invalid_argument(
                        "block_term_dist: type-1 rows must couple two coordinates");
                support[i][found++] = t;
            }
        }
        if (found != 2)
            throw std::invalid_argument("block_term_dist: type-1 rows must couple two coordinates");
    }

    // Edges of the coupling graph, two per node.
    std::array<std::array<int, 2>, 8> edges_at{};
    std::array<int, 8> edge_count{};
    for (int i = 0; i < 8; i++)
        for (int t : support[i]) {
            if (edge_count[t] == 2)
                throw std::invalid_argument("block_term_dist: degenerate coupling graph");
            edges_at[t][edge_count[t]++] = i;
        }
    for (int t = 0; t < 8; t++)
        if (edge_count[t] != 2)
            throw std::invalid_argument("block_term_dist: degenerate coupling graph");

    const int nvals = 2 * k + 1;
    const int64_t edge_max = int64_t(k) * 2 * k; // |e * (+-sigma +- sigma')|
    bool edge_used[8] = {};
    bool node_seen[8] = {};

    DistU result;
    result.lo = 0;
    result.p = {u128(1)};

    for (int start = 0; start < 8; start++) {
        if (node_seen[start])
            continue;
        // Collect the cycle through `start` as alternating nodes and edges.
        std::vector<int> nodes = {start};
        std::vector<int> edge_list;
        node_seen[start] = true;
        int cur = start;
        while (true) {
            int edge = -1;
            for (int cand : edges_at[cur])
                if (!edge_used[cand]) {
                    edge = cand;
                    break;
                }
            edge_used[edge] = true;
            edge_list.push_back(edge);
            const int next = support[edge][0] == cur ? support[edge][1] : support[edge][0];
            if (next == start)
                break;
            nodes.push_back(next);
            node_seen[next] = true;
            cur = next;
        }

        const int m = int(edge_list.size());
        const int64_t range = edge_max * m;
        const size_t width = size_t(2 * range + 1);

        // state[sigma_first][sigma_cur] -> z array
        std::vector<std::vector<u128>> state(size_t(nvals) * nvals);
        for (int sf = 0; sf < nvals; sf++) {
            auto& arr = state[size_t(sf) * nvals + sf];
            arr.assign(width, 0);
            arr[range] = psi[sf];
        }

        for (int step = 0; step < m; step++) {
            const bool closing = step == m - 1;
            const int edge = edge_list[step];
            const int node_cur = nodes[step];
            const int node_next = closing ? nodes[0] : nodes[step + 1];
            const int c_cur = reduced[edge][node_cur];
            const int c_next = reduced[edge][node_next];

            std::vector<std::vector<u128>> next_state(size_t(nvals) * nvals);
            for (int sf = 0; sf < nvals; sf++)
                for (int sc = 0; sc < nvals; sc++) {
                    const auto& arr = state[size_t(sf) * nvals + sc];
                    if (arr.empty())
                        continue;
                    const int64_t sig_cur = sc - k;
                    const int64_t sig_first = sf - k;
                    if (closing) {
                        // e * (c_cur*sigma_cur + c_next*sigma_first), no draw
                        const int64_t g = c_cur * sig_cur + c_next * sig_first;
                        auto& out = next_state[size_t(sf) * nvals + sf];
                        if (out.empty())
                            out.assign(width, 0);
                        for (size_t z = 0; z < width; z++) {
                            if (!arr[z])
                                continue;
                            for (int a = -k; a <= k; a++)
                                out[z + a * g] += arr[z] * psi[a + k];
                        }
                    } else {
                        for (int sn = 0; sn < nvals; sn++) {
                            const int64_t g = c_cur * sig_cur + c_next * (sn - k);
                            auto& out = next_state[size_t(sf) * nvals + sn];
                            if (out.empty())
                                out.assign(width, 0);
                            for (size_t z = 0; z < width; z++) {
                                if (!arr[z])
                                    continue;
                                const u128 w = arr[z] * psi[sn];
                                for (int a = -k; a <= k; a++)
                                    out[z + a * g] += w * psi[a + k];
                            }
                        }
                    }
                }
            state = std::move(next_state);
        }

        // Fold the states into the cycle distribution and convolve into the
        // running product.
        std::vector<u128> cycle(width, 0);
        for (const auto& arr : state)
            for (size_t z = 0; z < arr.size(); z++)
                cycle[z] += arr[z];

        std::vector<u128> merged(result.p.size() + width - 1, 0);
        for (size_t i = 0; i < result.p.size(); i++) {
            if (!result.p[i])
                continue;
            for (size_t j = 0; j < width; j++)
                merged[i + j] += result.p[i] * cycle[j];
        }
        result.lo -= range;
        result.p = std::move(merged);
    }
    return result;
}

// ---- type 2, canonical all-plus representative: walk DP ------------------
//
// With v = (1/2)^8 the coefficient of e_j is m_j/2 where m_0 = sum(sigma)
// and m_{j+1} = m_j - 2*sigma_j; the walk closes through
// sigma_7 = (m_7 + m_0)/2. States are (m_0, m_j) and every e_j contributes
// e_j * m_j on the z/2 grid.

DistU type2_walk_dp(int k) {
    const auto psi = psi_numerators(k);
    const int64_t mmax = 8 * k;
    const int64_t range = 8 * k * mmax; // |sum e_j m_j| <= 8*k*8k
    const size_t width = size_t(2 * range + 1);
    const int mslots = int(2 * mmax + 1);

    std::vector<u128> total(width, 0);
    for (int64_t m0 = -mmax; m0 <= mmax; m0++) {
        std::vector<std::vector<u128>> cur(mslots);
        cur[m0 + mmax].assign(width, 0);
        cur[m0 + mmax][range] = 1;

        for (int j = 0; j < 8; j++) {
            // convolve e_j * m_cur into every live state
            std::vector<std::vector<u128>> conv(mslots);
            for (int mi = 0; mi < mslots; mi++) {
                const auto& arr = cur[mi];
                if (arr.empty())
                    continue;
                const int64_t m = mi - mmax;
                auto& out = conv[mi];
                out.assign(width, 0);
                for (size_t z = 0; z < width; z++) {
                    if (!arr[z])
                        continue;
                    for (int a = -k; a <= k; a++)
                        out[z + a * m] += arr[z] * psi[a + k];
                }
            }
            if (j < 7) {
                std::vector<std::vector<u128>> next(mslots);
                for (int mi = 0; mi < mslots; mi++) {
                    const auto& arr = conv[mi];
                    if (arr.empty())
                        continue;
                    const int64_t m = mi - mmax;
                    for (int s = -k; s <= k; s++) {
                        const int64_t mn = m - 2 * s;
                        if (mn < -mmax || mn > mmax)
                            continue;
                        auto& out = next[mn + mmax];
                        if (out.empty())
                            out.assign(width, 0);
                        const uint64_t w = psi[s + k];
                        for (size_t z = 0; z < width; z++)
                            if (arr[z])
                                out[z] += arr[z] * w;
                    }
                }
                cur = std::move(next);
            } else {
                // closure: sigma_7 = (m_7 + m_0) / 2
                for (int mi = 0; mi < mslots; mi++) {
                    const auto& arr = conv[mi];
                    if (arr.empty())
                        continue;
                    const int64_t m7 = mi - mmax;
                    if ((m7 + m0) % 2 != 0)
                        continue;
                    const int64_t s7 = (m7 + m0) / 2;
                    if (s7 < -k || s7 > k)
                        continue;
                    const uint64_t w = psi[s7 + k];
                    for (size_t z = 0; z < width; z++)
                        if (arr[z])
                            total[z] += arr[z] * w;
                }
            }
        }
    }

    DistU result;
    result.lo = -range;
    result.p = std::move(total);
    return result;
}

// ---- type 2, arbitrary sign pattern: sigma enumeration -------------------
//
// Enumerates all (2k+1)^8 sigma assignments, collapsing on the sorted
// magnitudes of the per-e coefficients before the per-coordinate
// convolutions. Numerator products only stay inside 128 bits for k <= 2,
// which covers every non-canonical representative the tests ask about.

DistU type2_enumerate(const Vec8& rep_half, int k) {
    if (k > 2)
        throw std::invalid_argument(
            "block_term_dist: enumeration budget exceeded for a non-canonical representative");
    const auto psi = psi_numerators(k);

    int reduced[8][8]; // coefficients on the z/2 grid, entries +-1
    for (int i = 0; i < 8; i++)
        for (int t = 0; t < 8; t++) {
            int c = coeff_matrix(rep_half, i, t);
            if (c != 2 && c != -2)
                throw std::invalid_argument("block_term_dist: not a type-2 representative");
            reduced[i][t] = c / 2;
        }

    std::unordered_map<uint64_t, u128> weight_by_key;
    int sigma[8] = {};
    for (int i = 0; i < 8; i++)
        sigma[i] = -k;
    while (true) {
        u128 w = 1;
        for (int t = 0; t < 8; t++)
            w *= psi[sigma[t] + k];
        int64_t g[8];
        for (int i = 0; i < 8; i++) {
            int64_t sum = 0;
            for (int t = 0; t < 8; t++)
                sum += reduced[i][t] * sigma[t];
            g[i] = std::abs(sum);
        }
        std::sort(g, g + 8);
        uint64_t key = 0;
        for (int i = 0; i < 8; i++)
            key = key << 8 | uint64_t(g[i]);
        weight_by_key[key] += w;

        int pos = 0;
        while (pos < 8 && sigma[pos] == k)
            sigma[pos++] = -k;
        if (pos == 8)
            break;
        sigma[pos]++;
    }

    const int64_t range = 8 * k * 8 * k;
    const size_t width = size_t(2 * range + 1);
    std::vector<u128> total(width, 0);
    std::vector<u128> cond(width), next(width);
    for (const auto& [key, weight] : weight_by_key) {
        std::fill(cond.begin(), cond.end(), u128(0));
        cond[range] = 1;
        for (int i = 0; i < 8; i++) {
            const int64_t g = (key >> (8 * (7 - i))) & 0xff;
            std::fill(next.begin(), next.end(), u128(0));
            for (size_t z = 0; z < width; z++) {
                if (!cond[z])
                    continue;
                for (int a = -k; a <= k; a++)
                    next[z + a * g] += cond[z] * psi[a + k];
            }
            std::swap(cond, next);
        }
        for (size_t z = 0; z < width; z++)
            if (cond[z])
                total[z] += weight * cond[z];
    }

    DistU result;
    result.lo = -range;
    result.p = std::move(total);
    return result;
}

DyadicDist to_dyadic(const DistU& dist, int64_t step, uint64_t den_exp2, AnalysisMode mode) {
    // trim zero tails
    size_t first = 0, last = dist.p.size();
    while (first < last && !dist.p[first])
        first++;
    while (last > first && !dist.p[last - 1])
        last--;

    DyadicDist out;
    out.mode = mode;
    out.step = step;
    out.offset = (dist.lo + int64_t(first)) * step;
    out.den_exp2 = den_exp2;
    const size_t count = last - first;
    if (mode == AnalysisMode::floating) {
        out.pf.resize(count);
        const double scale = std::ldexp(1.0, -int(den_exp2));
        for (size_t i = 0; i < count; i++)
            out.pf[i] = u128_to_double(dist.p[first + i]) * scale;
    } else {
        out.pn.resize(count);
        for (size_t i = 0; i < count; i++)
            out.pn[i] = BigUint::from_u128(dist.p[first + i]);
    }
    return out;
}

std::mutex block_cache_mutex;
std::mutex power_cache_mutex;

} // namespace

VoronoiTypeSpec voronoi_type_spec(VrType type, const Params& params) {
    VoronoiTypeSpec spec;
    spec.type = type;
    if (type == VrType::type1) {
        spec.rep_half = {2, 2, 0, 0, 0, 0, 0, 0};
        spec.multiplicity = VR1_COUNT;
        spec.threshold_grid = 4 * int64_t(params.c) - 8 * params.k;
    } else {
        spec.rep_half = {1, 1, 1, 1, 1, 1, 1, 1};
        spec.multiplicity = VR2_COUNT;
        spec.threshold_grid = 4 * int64_t(params.c) - 16 * params.k;
    }
    return spec;
}

VoronoiTypeSpec voronoi_type_spec_for(const Vec8& rep_half, const Params& params) {
    int nonzero = 0;
    for (int i = 0; i < 8; i++)
        nonzero += rep_half[i] != 0;
    if (nonzero != 2 && nonzero != 8)
        throw std::invalid_argument("voronoi_type_spec_for: not a relevant vector");
    VoronoiTypeSpec spec = voronoi_type_spec(nonzero == 2 ? VrType::type1 : VrType::type2, params);
    spec.rep_half = rep_half;
    return spec;
}

double DyadicDist::total() const {
    if (mode == AnalysisMode::floating) {
        double sum = 0;
        for (double v : pf)
            sum += v;
        return sum;
    }
    BigUint sum;
    for (const BigUint& v : pn)
        sum += v;
    return std::exp2(sum.log2() - double(den_exp2));
}

double DyadicDist::prob_at_value(int64_t value) const {
    if (value < offset || (value - offset) % step != 0)
        return 0;
    const size_t i = size_t((value - offset) / step);
    if (i >= size())
        return 0;
    if (mode == AnalysisMode::floating)
        return pf[i];
    if (pn[i].is_zero())
        return 0;
    return std::exp2(pn[i].log2() - double(den_exp2));
}

DyadicDist block_term_dist(const VoronoiTypeSpec& spec, const Params& params, AnalysisMode mode) {
    const int k = params.k;
    if (k > 4)
        throw std::invalid_argument("block_term_dist: k > 4 exceeds the exact-enumeration budget");

    // The distribution in grid units depends only on (k, representative).
    static std::map<BlockTermKey, DistU> cache;
    const BlockTermKey key{k, spec.rep_half};

    std::unique_lock lock(block_cache_mutex);
    auto it = cache.find(key);
    if (it == cache.end()) {
        lock.unlock();
        DistU dist;
        if (spec.type == VrType::type1) {
            dist = type1_cycle_dp(spec.rep_half, k);
        } else {
            const Vec8 all_plus = {1, 1, 1, 1, 1, 1, 1, 1};
            dist = spec.rep_half == all_plus ? type2_walk_dp(k) : type2_enumerate(spec.rep_half, k);
        }
        lock.lock();
        it = cache.emplace(key, std::move(dist)).first;
    }
    const int64_t step = spec.type == VrType::type1 ? 4 : 2;
    DyadicDist out = to_dyadic(it->second, step, uint64_t(32) * k, mode);
    return out;
}

DyadicDist convolve(const DyadicDist& a, const DyadicDist& b) {
    if (a.mode != b.mode || a.step != b.step)
        throw std::invalid_argument("convolve: incompatible distributions");
    DyadicDist out;
    out.mode = a.mode;
    out.step = a.step;
    out.offset = a.offset + b.offset;
    out.den_exp2 = a.den_exp2 + b.den_exp2;
    if (a.mode == AnalysisMode::floating) {
        out.pf.assign(a.pf.size() + b.pf.size() - 1, 0.0);
        for (size_t i = 0; i < a.pf.size(); i++) {
            const double av = a.pf[i];
            if (av == 0)
                continue;
            for (size_t j = 0; j < b.pf.size(); j++)
                out.pf[i + j] += av * b.pf[j];
        }
    } else {
        out.pn.assign(a.pn.size() + b.pn.size() - 1, BigUint());
        for (size_t i = 0; i < a.pn.size(); i++) {
            if (a.pn[i].is_zero())
                continue;
            for (size_t j = 0; j < b.pn.size(); j++)
                if (!b.pn[j].is_zero())
                    out.pn[i + j] += a.pn[i] * b.pn[j];
        }
    }
    return out;
}

DyadicDist convolve_power(const DyadicDist& dist, int m) {
    if (m < 1)
        throw std::invalid_argument("convolve_power: m must be positive");
    constexpr size_t SUPPORT_CAP = size_t(1) << 26;
    if ((dist.size() - 1) * size_t(m) + 1 > SUPPORT_CAP)
        throw std::invalid_argument("convolve_power: support would exceed the cap");

    DyadicDist result;
    DyadicDist base = dist;
    bool have_result = false;
    for (int bits = m; bits != 0; bits >>= 1) {
        if (bits & 1) {
            result = have_result ? convolve(result, base) : base;
            have_result = true;
        }
        if (bits > 1)
            base = convolve(base, base);
    }
    return result;
}

TailProb tail_prob(const DyadicDist& dist, int64_t threshold_grid) {
    // first index with value strictly above the threshold
    size_t first = dist.size();
    if (dist.max_value() > threshold_grid) {
        if (threshold_grid < dist.min_value())
            first = 0;
        else
            first = size_t((threshold_grid - dist.offset) / dist.step + 1);
    }

    TailProb out;
    out.exact = dist.mode == AnalysisMode::exact;
    if (!out.exact) {
        std::vector<double> values(dist.pf.begin() + first, dist.pf.end());
        std::sort(values.begin(), values.end());
        double sum = 0;
        for (double v : values)
            sum += v;
        out.value = sum;
        out.log2 = std::log2(sum);
        return out;
    }
    BigUint sum;
    for (size_t i = first; i < dist.pn.size(); i++)
        sum += dist.pn[i];
    out.num = sum;
    out.den_exp2 = dist.den_exp2;
    out.log2 = sum.is_zero() ? -std::numeric_limits<double>::infinity()
                             : sum.log2() - double(dist.den_exp2);
    out.value = std::exp2(out.log2);
    return out;
}

namespace {

// Exact P(A + B > threshold) without materializing the convolution of A
// and B: sum_a A(a) * TailB(threshold - a).
TailProb tail_of_sum_exact(const DyadicDist& a, const DyadicDist& b, int64_t threshold) {
    std::vector<BigUint> suffix(b.pn.size() + 1);
    for (size_t i = b.pn.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + b.pn[i];

    BigUint sum;
    for (size_t i = 0; i < a.pn.size(); i++) {
        if (a.pn[i].is_zero())
            continue;
        const int64_t need = threshold - a.value_at(i); // want b-value > need
        size_t j;
        if (b.max_value() <= need)
            continue;
        else if (need < b.min_value())
            j = 0;
        else
            j = size_t((need - b.offset) / b.step + 1);
        if (suffix[j].is_zero())
            continue;
        sum += a.pn[i] * suffix[j];
    }
    TailProb out;
    out.exact = true;
    out.num = sum;
    out.den_exp2 = a.den_exp2 + b.den_exp2;
    out.log2 = sum.is_zero() ? -std::numeric_limits<double>::infinity()
                             : sum.log2() - double(out.den_exp2);
    out.value = std::exp2(out.log2);
    return out;
}

struct ConvCacheKey {
    int k;
    VrType type;
    int m;
    bool operator<(const ConvCacheKey& other) const {
        return std::tie(k, type, m) < std::tie(other.k, other.type, other.m);
    }
};

const DyadicDist& cached_power(const VoronoiTypeSpec& spec, const Params& params, int m) {
    static std::map<ConvCacheKey, DyadicDist> cache;
    std::lock_guard lock(power_cache_mutex);
    const ConvCacheKey key{params.k, spec.type, m};
    auto it = cache.find(key);
    if (it == cache.end()) {
        DyadicDist base = block_term_dist(spec, params, AnalysisMode::floating);
        it = cache.emplace(key, convolve_power(base, m)).first;
    }
    return it->second;
}

} // namespace

double pe_bound_log2(const Params& params, AnalysisMode mode, int m_blocks) {
    const VoronoiTypeSpec spec1 = voronoi_type_spec(VrType::type1, params);
    const VoronoiTypeSpec spec2 = voronoi_type_spec(VrType::type2, params);

    if (mode == AnalysisMode::floating) {
        const double p1 = tail_prob(cached_power(spec1, params, m_blocks), spec1.threshold_grid).value;
        const double p2 = tail_prob(cached_power(spec2, params, m_blocks), spec2.threshold_grid).value;
        return std::log2(L * (spec1.multiplicity * p1 + spec2.multiplicity * p2));
    }

    // Exact mode: split each 192-fold (or reduced) sum in half so the widest
    // bignum convolution stops at m/2.
    TailProb tails[2];
    const VoronoiTypeSpec* specs[2] = {&spec1, &spec2};
    for (int i = 0; i < 2; i++) {
        DyadicDist base = block_term_dist(*specs[i], params, AnalysisMode::exact);
        const int half = m_blocks / 2;
        const int rest = m_blocks - half;
        if (half == 0) {
            tails[i] = tail_prob(convolve_power(base, rest), specs[i]->threshold_grid);
            continue;
        }
        DyadicDist a = convolve_power(base, half);
        DyadicDist b = half == rest ? a : convolve_power(base, rest);
        tails[i] = tail_of_sum_exact(a, b, specs[i]->threshold_grid);
    }

    // L * (112 * P1 + 128 * P2) over a common denominator.
    const uint64_t exp_common = std::max(tails[0].den_exp2, tails[1].den_exp2);
    BigUint n1 = tails[0].num << (exp_common - tails[0].den_exp2);
    BigUint n2 = tails[1].num << (exp_common - tails[1].den_exp2);
    BigUint combined = n1 * BigUint(uint64_t(spec1.multiplicity) * L) +
                       n2 * BigUint(uint64_t(spec2.multiplicity) * L);
    if (combined.is_zero())
        return -std::numeric_limits<double>::infinity();
    return combined.log2() - double(exp_common);
}

} // namespace e8kem
