#ifndef PINLAB_RNG_HPP
#define PINLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace pinlab::rng {

// Counter-based stream: every variate is a pure function of its key, so
// (seed, sample, site) lookups are reproducible in any traversal order and
// across any degree of parallelism.

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
    x = splitmix64(x ^ a);
    x = splitmix64(x ^ b);
    return x;
}

// Uniform in (0, 1); never returns 0 or 1.
inline double uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t x = mix(seed, a, b);
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// Standard Gaussian via Box-Muller on two decorrelated uniforms.
inline double gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t x = mix(seed, a, b);
    const std::uint64_t y = splitmix64(x ^ 0x2545f4914f6cdd1dULL);
    const double u1 = (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(y >> 11) + 0.5) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace pinlab::rng

#endif
