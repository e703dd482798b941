#pragma once

#include <cstdint>

namespace maxlin::rng {

/// SplitMix64 finalizer. Good avalanche; used here as the mixing core of a
/// stateless counter-based generator.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hash of a (seed, a, b) key. Each word is absorbed through mix64 so that
/// adjacent counters map to unrelated outputs.
inline std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed ^ 0x8e9c4d1f5a7b3c21ULL);
    h = mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ (b + 0xbf58476d1ce4e5b9ULL));
    return h;
}

/// Uniform draw in the open interval (0,1), keyed by (seed, row, column).
/// Stateless: replicates and nodes can be evaluated in any order, on any
/// number of threads, with identical results.
inline double uniform01(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
    const std::uint64_t bits = key(seed, row, col);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Derives an independent stream seed for a Monte-Carlo replicate.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate) {
    return mix64(mix64(master ^ 0x6a09e667f3bcc909ULL) ^ (replicate + 1));
}

} // namespace maxlin::rng
