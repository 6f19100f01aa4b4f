#ifndef E8KEM_ANALYSIS_HPP
#define E8KEM_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "e8kem/bigint.hpp"
#include "e8kem/e8.hpp"
#include "e8kem/params.hpp"

namespace e8kem {

// Failure-probability bound engine.
//
// A block decodes wrongly only if the noise inner product against some
// scaled Voronoi-relevant vector exceeds its facet threshold. Per relevant
// vector the inner product splits into a worst-cased short-noise part and a
// sum of 192 i.i.d. block terms <sigma, e*v>, sigma and e 8-vectors of
// centered binomial coordinates and e*v the negacyclic product with the
// representative. Everything is computed on the integer grid of C/4 units,
// where the two vector types have thresholds 4C-8k (type 1) and 4C-16k
// (type 2); the bound is L * (112*P1 + 128*P2).

enum class AnalysisMode { floating, exact };

enum class VrType { type1 = 1, type2 = 2 };

struct VoronoiTypeSpec {
    VrType type;
    Vec8 rep_half;          // representative relevant vector, half-units
    int multiplicity;       // 112 or 128
    int64_t threshold_grid; // facet threshold in C/4 units: 4C - 8k resp. 4C - 16k
};

/// Spec with the canonical representative: (1,1,0^6) for type 1, (1/2)^8
/// for type 2.
VoronoiTypeSpec voronoi_type_spec(VrType type, const Params& params);

/// Spec for an arbitrary relevant vector (half-unit coordinates); the type
/// is detected from the support pattern.
VoronoiTypeSpec voronoi_type_spec_for(const Vec8& rep_half, const Params& params);

/**
 * Finitely supported distribution on the C/4 grid: value(i) = offset + i*step.
 * Floating mode stores doubles; exact mode stores numerators over the common
 * denominator 2^den_exp2.
 */
class DyadicDist {
public:
    AnalysisMode mode = AnalysisMode::floating;
    int64_t offset = 0;
    int64_t step = 1;
    std::vector<double> pf;
    std::vector<BigUint> pn;
    uint64_t den_exp2 = 0;

    size_t size() const { return mode == AnalysisMode::floating ? pf.size() : pn.size(); }
    int64_t value_at(size_t i) const { return offset + int64_t(i) * step; }
    int64_t min_value() const { return offset; }
    int64_t max_value() const { return value_at(size() - 1); }

    double total() const;
    double prob_at_value(int64_t value) const; // 0 when off the grid
};

/**
 * Exact distribution of the block term (in C/4 grid units) for the given
 * representative, with sigma and e independent 8-vectors of psi_k
 * coordinates. Computed by exact transfer dynamic programming over the
 * sigma chain; rejects k > 4, where the numerators outgrow the 128-bit
 * accumulators.
 */
DyadicDist block_term_dist(const VoronoiTypeSpec& spec, const Params& params, AnalysisMode mode);

DyadicDist convolve(const DyadicDist& a, const DyadicDist& b);

/// m-fold self-convolution by binary exponentiation. Throws if the support
/// would exceed the configured cap (2^26 points).
DyadicDist convolve_power(const DyadicDist& dist, int m);

struct TailProb {
    double value;    // underflows to 0 for extreme exact tails; log2 stays valid
    double log2;
    bool exact;
    BigUint num;     // exact mode only
    uint64_t den_exp2 = 0;
};

/// P(Z > threshold), strict, summed in ascending magnitude in floating mode
/// and exactly in exact mode.
TailProb tail_prob(const DyadicDist& dist, int64_t threshold_grid);

/**
 * log2 of the failure-probability bound. m_blocks is the number of i.i.d.
 * block terms (192 for the full protocol; reduced values support cheap
 * exact-mode cross-validation). Exact mode splits the sum in half and
 * combines one half's pmf with the other's tail, which keeps the largest
 * bignum convolution at m/2 without giving up exactness.
 */
double pe_bound_log2(const Params& params, AnalysisMode mode = AnalysisMode::floating,
                     int m_blocks = 2 * L * D);

inline constexpr int BLOCK_TERM_COUNT = 2 * L * D; // 192

} // namespace e8kem

#endif
