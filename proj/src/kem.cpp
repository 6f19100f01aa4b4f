#include "e8kem/kem.hpp"

#include <algorithm>

namespace e8kem {

ServerState gen(std::span<const uint8_t, 64> entropy, const Params& params) {
    ServerState state;
    std::copy(entropy.begin(), entropy.begin() + 32, state.seed.bytes.begin());
    Seed noise_seed;
    std::copy(entropy.begin() + 32, entropy.end(), noise_seed.bytes.begin());

    PolyMat a = expand_matrix(state.seed, params);
    state.s = sample_cbd_vec(noise_seed, {0, 0}, params);
    state.e = sample_cbd_vec(noise_seed, {0, uint8_t(D)}, params);
    state.b = mat_vec_mul(a, state.s, false, params);
    for (int i = 0; i < D; i++)
        state.b.v[i] = poly_add(state.b.v[i], state.e.v[i], params);
    return state;
}

ClientOutput encaps(const PublicKey& pk, std::span<const uint8_t, 32> entropy,
                    const Params& params) {
    Seed noise_seed;
    std::copy(entropy.begin(), entropy.end(), noise_seed.bytes.begin());

    PolyMat a = expand_matrix(pk.seed, params);
    PolyVec s_prime = sample_cbd_vec(noise_seed, {0, 0}, params);
    PolyVec e_prime = sample_cbd_vec(noise_seed, {0, uint8_t(D)}, params);
    Poly e_last = sample_cbd_poly(noise_seed, {0, uint8_t(2 * D)}, params);

    ClientOutput out;
    out.u = mat_vec_mul(a, s_prime, true, params);
    for (int i = 0; i < D; i++)
        out.u.v[i] = poly_add(out.u.v[i], e_prime.v[i], params);

    Poly v = poly_add(dot(pk.b, s_prime, params), e_last, params);
    out.hint = help_rec(v, params);
    out.key = rec(v, out.hint, params);
    return out;
}

SharedKey decaps(const ServerState& state, const PolyVec& u, const HelpHint& hint,
                 const Params& params) {
    Poly v_prime = dot(u, state.s, params);
    return rec(v_prime, hint, params);
}

} // namespace e8kem
