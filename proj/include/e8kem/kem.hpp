#ifndef E8KEM_KEM_HPP
#define E8KEM_KEM_HPP

#include <span>

#include "e8kem/reconcile.hpp"
#include "e8kem/ring.hpp"
#include "e8kem/sampler.hpp"

namespace e8kem {

struct PublicKey {
    Seed seed;  // expands to the public matrix A
    PolyVec b;  // A*s + e
};

/**
 * Server-side session state. The noise vector e is retained alongside the
 * secret so the construction invariant b = A*s + e stays checkable.
 */
struct ServerState {
    Seed seed;
    PolyVec s;
    PolyVec e;
    PolyVec b;

    PublicKey public_key() const { return {seed, b}; }
};

struct ClientOutput {
    PolyVec u;     // A^T*s' + e'
    HelpHint hint; // HelpRec(v)
    SharedKey key; // Rec(v, hint)
};

/**
 * Key generation. The first 32 entropy bytes seed the public matrix, the
 * last 32 seed the noise sampler; s and e use nonce counters 0..2 and 3..5.
 * Fully deterministic in the entropy.
 */
ServerState gen(std::span<const uint8_t, 64> entropy, const Params& params);

/**
 * Encapsulation against a public key. The 32 entropy bytes seed the client
 * noise sampler; s', e', e'' use nonce counters 0..2, 3..5, 6. Deterministic
 * in (public key, entropy).
 */
ClientOutput encaps(const PublicKey& pk, std::span<const uint8_t, 32> entropy,
                    const Params& params);

/// Decapsulation: v' = u . s, key = Rec(v', hint). Never rejects a
/// well-formed ciphertext.
SharedKey decaps(const ServerState& state, const PolyVec& u, const HelpHint& hint,
                 const Params& params);

} // namespace e8kem

#endif
