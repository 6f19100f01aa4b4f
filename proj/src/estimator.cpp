#include "e8kem/estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace e8kem {

namespace {

const double COST_CLASSICAL = std::log2(std::sqrt(3.0 / 2.0)); // 0.2925
const double COST_QUANTUM = std::log2(std::sqrt(13.0 / 9.0));  // 0.2653
const double COST_PLAUSIBLE = std::log2(std::sqrt(4.0 / 3.0)); // 0.2075

const double PI = 3.14159265358979323846;

std::vector<double> log2_delta_table() {
    std::vector<double> table(B_MAX + 1, 0.0);
    for (int b = B_MIN; b <= B_MAX; b++)
        table[b] = std::log2(delta0(b));
    return table;
}

int bits(double cost) {
    return int(std::lround(cost));
}

} // namespace

double delta0(int b) {
    if (b < 50)
        throw std::invalid_argument("delta0: block size below model validity (b >= 50)");
    const double bd = b;
    return std::pow(std::pow(PI * bd, 1.0 / bd) * bd / (2.0 * PI * std::exp(1.0)),
                    1.0 / (2.0 * (bd - 1.0)));
}

AttackCost primal_cost(double q, int k, int n_total) {
    static const std::vector<double> log2_delta = log2_delta_table();
    const double sigma = std::sqrt(k / 2.0);
    const double log2_q = std::log2(q);

    AttackCost best;
    best.kind = AttackCost::Kind::primal;
    for (int b = B_MIN; b <= B_MAX && !best.feasible; b++) {
        const double lhs = std::log2(sigma * std::sqrt(double(b)));
        for (int m = M_MIN; m <= M_MAX; m++) {
            const double dim = m + n_total;
            const double rhs = (2.0 * b - dim - 1.0) * log2_delta[b] + (m / dim) * log2_q;
            if (lhs <= rhs) {
                best.feasible = true;
                best.m = m;
                best.b = b;
                best.classical = bits(COST_CLASSICAL * b);
                best.quantum = bits(COST_QUANTUM * b);
                best.plausible = bits(COST_PLAUSIBLE * b);
                break;
            }
        }
    }
    return best;
}

AttackCost dual_cost(double q, int k, int n_total) {
    static const std::vector<double> log2_delta = log2_delta_table();
    const double sigma = std::sqrt(k / 2.0);
    const double log2_q = std::log2(q);

    AttackCost best;
    best.kind = AttackCost::Kind::dual;
    double best_value = std::numeric_limits<double>::infinity();
    double best_rep = 0;
    for (int b = B_MIN; b <= B_MAX; b++) {
        if (COST_CLASSICAL * b >= best_value)
            break; // repetitions only add cost
        for (int m = M_MIN; m <= M_MAX; m++) {
            const double dim = m + n_total;
            const double log2_l = dim * log2_delta[b] + (n_total / dim) * log2_q;
            const double tau = std::exp2(log2_l) * sigma / q;
            const double log2_eps = -2.0 * PI * PI * tau * tau / std::log(2.0);
            const double log2_rep = std::max(0.0, -2.0 * log2_eps - COST_PLAUSIBLE * b);
            const double value = COST_CLASSICAL * b + log2_rep;
            if (value < best_value) {
                best_value = value;
                best_rep = log2_rep;
                best.feasible = true;
                best.m = m;
                best.b = b;
            }
        }
    }
    if (best.feasible) {
        best.classical = bits(COST_CLASSICAL * best.b + best_rep);
        best.quantum = bits(COST_QUANTUM * best.b + best_rep);
        best.plausible = bits(COST_PLAUSIBLE * best.b + best_rep);
    }
    return best;
}

std::vector<EstimatorRow> comparison_rows() {
    return {
        {"Saber-KEM: q=8192, k=8", 8192, 8, 768},
        {"Kyber768 Round 1: q=7681, k=4", 7681, 4, 768},
        {"e8kem: q=4096, k=4", 4096, 4, 768},
        {"Kyber768 Round 3: q=3329, k=2", 3329, 2, 768},
        {"e8kem: q=2048, k=2", 2048, 2, 768},
    };
}

EstimatorRow row_for(const Params& params) {
    return {"preset " + params.name(), double(params.q), params.k, N * D};
}

} // namespace e8kem
