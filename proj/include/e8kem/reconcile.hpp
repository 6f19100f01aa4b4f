#ifndef E8KEM_RECONCILE_HPP
#define E8KEM_RECONCILE_HPP

#include <array>
#include <cstdint>

#include "e8kem/e8.hpp"
#include "e8kem/ring.hpp"

namespace e8kem {

// Reconciliation hint: 32 blocks of 8 coset coordinates, each in
// [0, 2^(p-1)), i.e. exactly 256*(p-1) bits of content.
struct HelpHint {
    std::array<std::array<uint8_t, BLOCK_DIM>, L> coords{};

    bool operator==(const HelpHint&) const = default;
};

// One key byte per block, in block order; 256 bits total.
struct SharedKey {
    std::array<uint8_t, L> bytes{};

    bool operator==(const SharedKey&) const = default;
};

/// Blockwise coset label of the nearest quantization-lattice point:
/// hint[kappa] = hint_label(quantize_scaled(split(v)[kappa], s1)).
HelpHint help_rec(const Poly& v, const Params& params);

/// Blockwise key byte: key_label(quantize_scaled(block - hint_lift(r), s2)).
/// Rejects hints with out-of-range coordinates.
SharedKey rec(const Poly& v, const HelpHint& r, const Params& params);

/// Blockwise v - key_lift(k) + key_lift(k2), reduced mod q. A permutation
/// of R_q that fixes hints and carries the reconciled key k to k2.
Poly permute_pi(const Poly& v, const SharedKey& k, const SharedKey& k2, const Params& params);

} // namespace e8kem

#endif
