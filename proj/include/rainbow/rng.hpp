#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rainbow {

using Rng = std::mt19937_64;

// Uniform draw from [0, bound) by rejection; portable across platforms,
// unlike std::uniform_int_distribution.
inline uint64_t bounded(Rng& rng, uint64_t bound) {
    if (bound == 0) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Derives an independent stream seed; splitmix64 finalizer.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(bounded(rng, uint64_t(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace rainbow
