#ifndef E8KEM_PARAMS_HPP
#define E8KEM_PARAMS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace e8kem {

// Fixed protocol dimensions.
inline constexpr int N = 256;       // ring degree
inline constexpr int D = 3;         // module rank
inline constexpr int L = 32;        // split count
inline constexpr int BLOCK_DIM = 8; // block dimension (N = L * BLOCK_DIM)

/**
 * One parameter set (q, k, p) plus derived lattice scales.
 *
 * The three nested per-block lattices are
 *   quantization  (q/2^p)*E8   (scale s1),
 *   coding        (q/2)*E8     (scale s2),
 *   shaping       q*Z^8,
 * and C = s2 - s1 is the reliability scale used by the failure analysis.
 *
 * Validity requires q a power of two with 2^(p+1) | q, which keeps every
 * lattice point and every canonical hint lift on the integer grid.
 */
struct Params {
    uint32_t q = 0;   // modulus, power of two
    int k = 0;        // binomial noise parameter, variance k/2
    int p = 0;        // reconciliation depth, >= 2
    int log2q = 0;
    uint32_t s1 = 0;  // q / 2^p
    uint32_t s2 = 0;  // q / 2
    uint32_t c = 0;   // (q/2) * (1 - 2^-(p-1)) = s2 - s1

    int key_rate() const { return 1; }        // key bits per dimension
    int rec_rate() const { return p - 1; }    // hint bits per dimension
    uint32_t hint_coord_range() const { return uint32_t(1) << (p - 1); }

    size_t packed_poly_bytes() const { return size_t(N) * log2q / 8; }
    size_t packed_vec_bytes() const { return size_t(D) * packed_poly_bytes(); }
    size_t hint_bytes() const { return size_t(N) * (p - 1) / 8; }
    size_t msg1_bytes() const { return 32 + packed_vec_bytes(); }
    size_t msg2_bytes() const { return packed_vec_bytes() + hint_bytes(); }

    std::string name() const;
};

/// Builds a parameter set, rejecting any (q, k, p) that violates the
/// divisibility constraints. Error messages name the violated constraint.
Params make_params(uint32_t q, int k, int p);

/// Looks up one of the named presets ("e8kem-2048-p5", ...).
const Params& preset(std::string_view name);

/// All preset names, default first.
const std::vector<std::string>& preset_names();

inline constexpr std::string_view DEFAULT_PRESET = "e8kem-2048-p5";

} // namespace e8kem

#endif
