#include "e8kem/params.hpp"

#include <map>
#include <stdexcept>

namespace e8kem {

std::string Params::name() const {
    return "e8kem-" + std::to_string(q) + "-p" + std::to_string(p);
}

Params make_params(uint32_t q, int k, int p) {
    if (q == 0 || (q & (q - 1)) != 0)
        throw std::invalid_argument("q must be a power of two (got " + std::to_string(q) + ")");
    if (k < 1)
        throw std::invalid_argument("k must be at least 1 (got " + std::to_string(k) + ")");
    if (p < 2)
        throw std::invalid_argument("p must be at least 2 (got " + std::to_string(p) + ")");
    if (p + 1 >= 32 || q % (uint32_t(1) << (p + 1)) != 0)
        throw std::invalid_argument("2^(p+1) must divide q (q=" + std::to_string(q) +
                                    ", p=" + std::to_string(p) + ")");

    Params params;
    params.q = q;
    params.k = k;
    params.p = p;
    params.log2q = 0;
    while ((uint32_t(1) << params.log2q) < q)
        params.log2q++;
    params.s1 = q >> p;
    params.s2 = q >> 1;
    params.c = params.s2 - params.s1;
    return params;
}

namespace {

// One preset per failure-bound table cell: q in {2^11 (k=2), 2^12 (k=4),
// 2^13 (k=4)}, p in {2..5}. q=2048, p=5 is the recommended default.
const std::map<std::string, Params, std::less<>>& preset_map() {
    static const std::map<std::string, Params, std::less<>> presets = [] {
        std::map<std::string, Params, std::less<>> out;
        const struct { uint32_t q; int k; } families[] = {
            {2048, 2}, {4096, 4}, {8192, 4},
        };
        for (auto [q, k] : families)
            for (int p = 2; p <= 5; p++) {
                Params params = make_params(q, k, p);
                out.emplace(params.name(), params);
            }
        return out;
    }();
    return presets;
}

} // namespace

const Params& preset(std::string_view name) {
    const auto& presets = preset_map();
    auto it = presets.find(name);
    if (it == presets.end())
        throw std::invalid_argument("unknown preset: " + std::string(name));
    return it->second;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        out.emplace_back(DEFAULT_PRESET);
        for (const auto& [name, params] : preset_map())
            if (name != DEFAULT_PRESET)
                out.push_back(name);
        return out;
    }();
    return names;
}

} // namespace e8kem
