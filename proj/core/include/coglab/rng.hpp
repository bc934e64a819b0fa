#pragma once
// Deterministic random transforms. The engine sequence of std::mt19937_64
// is pinned by the standard, but the standard *distributions* are not;
// the transforms here are hand-rolled so outputs are bit-identical across
// toolchains. All engine randomness flows through this header.

#include <cmath>
#include <cstdint>
#include <random>

namespace coglab {

using Rng = std::mt19937_64;

// Mixes a base seed with a stream index (e.g. batch item) so parallel
// items get decorrelated, reproducible streams. SplitMix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller (the cached second value is dropped to
// keep the consumption pattern simple and order-independent).
inline double normal(Rng& rng, double mean = 0.0, double sd = 1.0) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
}

// Uniform integer in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

}  // namespace coglab
