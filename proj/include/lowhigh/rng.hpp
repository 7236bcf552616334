#pragma once

#include <cstdint>

namespace lowhigh {

/// splitmix64. The three constants below pin the sequence so workloads are
/// reproducible across implementations and languages: the state increments
/// by 0x9E3779B97F4A7C15 per draw and the output is the two-round
/// xor-multiply finalizer of the new state. below(k) reduces by modulo.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + (int)below((std::uint64_t)(hi - lo + 1));
    }
};

}  // namespace lowhigh
