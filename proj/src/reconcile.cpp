#include "e8kem/reconcile.hpp"

#include <stdexcept>

namespace e8kem {

namespace {

inline Block8 block_point(const std::array<int64_t, BLOCK_DIM>& coeffs) {
    Block8 out;
    out.num = coeffs;
    out.den = 1;
    return out;
}

} // namespace

HelpHint help_rec(const Poly& v, const Params& params) {
    const SplitBlocks blocks = split(v);
    HelpHint hint;
    for (int kappa = 0; kappa < L; kappa++) {
        Block8 quantized = quantize_scaled(block_point(blocks[kappa]), params.s1);
        Vec8 label = hint_label(quantized, params);
        for (int i = 0; i < BLOCK_DIM; i++)
            hint.coords[kappa][i] = uint8_t(label[i]);
    }
    return hint;
}

SharedKey rec(const Poly& v, const HelpHint& r, const Params& params) {
    const uint32_t range = params.hint_coord_range();
    const SplitBlocks blocks = split(v);
    SharedKey key;
    for (int kappa = 0; kappa < L; kappa++) {
        Vec8 label;
        for (int i = 0; i < BLOCK_DIM; i++) {
            if (r.coords[kappa][i] >= range)
                throw std::invalid_argument("rec: hint coordinate out of range");
            label[i] = r.coords[kappa][i];
        }
        Block8 lifted = hint_lift(label, params);
        Block8 shifted;
        shifted.den = 1;
        for (int i = 0; i < BLOCK_DIM; i++)
            shifted.num[i] = blocks[kappa][i] - lifted.num[i];
        key.bytes[kappa] = key_label(quantize_scaled(shifted, params.s2), params);
    }
    return key;
}

Poly permute_pi(const Poly& v, const SharedKey& k, const SharedKey& k2, const Params& params) {
    const uint32_t q = params.q;
    SplitBlocks blocks = split(v);
    for (int kappa = 0; kappa < L; kappa++) {
        Block8 from = key_lift(k.bytes[kappa], params);
        Block8 to = key_lift(k2.bytes[kappa], params);
        for (int i = 0; i < BLOCK_DIM; i++) {
            int64_t coord = blocks[kappa][i] - from.num[i] + to.num[i];
            blocks[kappa][i] = ((coord % q) + q) % q;
        }
    }
    return interleave(blocks);
}

} // namespace e8kem
