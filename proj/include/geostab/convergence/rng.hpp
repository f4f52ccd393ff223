// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace geostab {

// SplitMix64 (Steele, Lea & Flood): a 64-bit counter-based generator. The
// algorithm is fixed so any reimplementation reproduces identical subsample
// draws:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB; output = z ^ z>>31
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 mantissa bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound); bound >= 1. Plain modulo: the bias at the bound
    // sizes used here (<= a few thousand) is far below 2^-50.
    uint64_t next_below(uint64_t bound) { return next() % bound; }

private:
    uint64_t state_;
};

// FNV-1a 64-bit over the key bytes.
uint64_t fnv1a64(std::string_view bytes);

// Per-series seed: one SplitMix64 output of (master_seed ^ fnv1a64(key)).
// Parallel scheduling order therefore cannot change any draw.
uint64_t derive_seed(uint64_t master_seed, std::string_view key);

// First n_take entries of a Fisher-Yates partial shuffle of [0, n_total),
// consuming one generator output per selected index. Order of the returned
// indices is the shuffle order.
std::vector<size_t> sample_without_replacement(size_t n_total, size_t n_take, SplitMix64& rng);

} // namespace geostab
