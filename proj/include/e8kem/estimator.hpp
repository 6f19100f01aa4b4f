#ifndef E8KEM_ESTIMATOR_HPP
#define E8KEM_ESTIMATOR_HPP

#include <string>
#include <vector>

#include "e8kem/params.hpp"

namespace e8kem {

// Core-SVP cost model for the primal and dual BKZ attacks on the underlying
// LWE instance (dimension n_total = n*d, noise sigma = sqrt(k/2)). One SVP
// call at block size b costs 2^(0.292b) classically, 2^(0.265b) quantumly
// and 2^(0.2075b) as the plausible lower bound (exact constants
// log2 sqrt(3/2), log2 sqrt(13/9), log2 sqrt(4/3)); the dual attack pays
// repetitions when the advantage of one sieve's worth of vectors is too
// small. Reported bit costs are rounded to the nearest integer.

struct AttackCost {
    enum class Kind { primal, dual };
    Kind kind = Kind::primal;
    int m = 0; // samples used
    int b = 0; // BKZ block size
    int classical = 0;
    int quantum = 0;
    int plausible = 0;
    bool feasible = false;
};

/// Root Hermite factor model delta0(b) = ((pi*b)^(1/b) * b/(2*pi*e))^(1/(2b-2)).
/// Rejects b < 50 where the model is meaningless.
double delta0(int b);

/**
 * Primal attack via the embedding lattice on m samples, dimension
 * d = m + n_total: success when sigma*sqrt(b) <= delta0(b)^(2b-d-1) * q^(m/d).
 * Returns the smallest feasible block size (smallest feasible m within it)
 * over the search grid.
 */
AttackCost primal_cost(double q, int k, int n_total);

/**
 * Dual attack on the lattice {(x, y) : A^T x = y mod q} of dimension
 * d = m + n_total and volume q^n_total: a BKZ-b first vector has length
 * l = delta0(b)^d * q^(n_total/d) and distinguishes with advantage
 * eps = 2^(-2*pi^2*tau^2 / ln 2), tau = l*sigma/q. Each cost figure carries
 * max(0, -log2(eps^2 * 2^(0.2075b))) bits of repetitions; the reported
 * (m, b) minimizes the classical figure, ties to the smallest b then m.
 */
AttackCost dual_cost(double q, int k, int n_total);

// Search grid.
inline constexpr int M_MIN = 50, M_MAX = 2 * 768;
inline constexpr int B_MIN = 100, B_MAX = 1200;

struct EstimatorRow {
    std::string label;
    double q;
    int k;
    int n_total;
};

/// The comparison rows reported by the CLI alongside a preset.
std::vector<EstimatorRow> comparison_rows();

EstimatorRow row_for(const Params& params);

} // namespace e8kem

#endif
