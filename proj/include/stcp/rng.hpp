#pragma once

#include <cstdint>
#include <cmath>

// Counter-based pseudo-random draws. Every variate is a pure function of
// (seed, counters...), so parallel or out-of-order generation yields the
// same stream.

namespace stcp::rng {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Uniform on [0, 1), 53-bit mantissa.
inline double uniform01(std::uint64_t seed, std::uint64_t a,
                        std::uint64_t b = 0, std::uint64_t c = 0) {
    return static_cast<double>(hash(seed, a, b, c) >> 11) * 0x1.0p-53;
}

inline double uniform(double lo, double hi, std::uint64_t seed, std::uint64_t a,
                      std::uint64_t b = 0, std::uint64_t c = 0) {
    return lo + (hi - lo) * uniform01(seed, a, b, c);
}

// Standard normal via Box-Muller; consumes two counter slots (c, c+1).
inline double normal01(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
    double u1 = uniform01(seed, a, b, c);
    double u2 = uniform01(seed, a, b, c + 1);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace stcp::rng
