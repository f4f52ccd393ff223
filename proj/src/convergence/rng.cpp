// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/convergence/rng.hpp"

#include <cassert>
#include <numeric>

namespace geostab {

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t hash = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

uint64_t derive_seed(uint64_t master_seed, std::string_view key) {
    SplitMix64 g(master_seed ^ fnv1a64(key));
    return g.next();
}

std::vector<size_t> sample_without_replacement(size_t n_total, size_t n_take, SplitMix64& rng) {
    assert(n_take <= n_total);
    std::vector<size_t> indices(n_total);
    std::iota(indices.begin(), indices.end(), size_t{0});
    for (size_t i = 0; i < n_take; ++i) {
        size_t j = i + static_cast<size_t>(rng.next_below(n_total - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(n_take);
    return indices;
}

} // namespace geostab
