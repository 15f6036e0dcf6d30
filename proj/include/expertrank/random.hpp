#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace expertrank {

// The standard distribution classes are implementation-defined; these draws
// depend only on the mt19937_64 output sequence, so seeded runs reproduce on
// every platform.

/// Uniform integer in [0, bound); bound must be positive.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x = rng();
    while (x >= limit) {
        x = rng();
    }
    return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace expertrank
