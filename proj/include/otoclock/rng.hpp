#pragma once

// Counter-based random streams: sample k of stream (seed) is a pure function
// of (seed, k), so ensemble loops can be parallelized in any order and still
// produce the sequence a serial loop would.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace otoclock::rng {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Raw 64-bit word for counter `k`, substream `s` of stream `seed`.
inline std::uint64_t word(std::uint64_t seed, std::uint64_t k, std::uint64_t s = 0) {
  return splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc909ull) + splitmix64(k) + s * 0x9e3779b97f4a7c15ull);
}

// Uniform double in (0, 1]; never 0 so it is safe under log().
inline double uniform01(std::uint64_t seed, std::uint64_t k, std::uint64_t s = 0) {
  return (static_cast<double>(word(seed, k, s) >> 11) + 1.0) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t k, double lo, double hi,
                      std::uint64_t s = 0) {
  return lo + (hi - lo) * uniform01(seed, k, s);
}

// Standard normal via Box-Muller on substreams (2s, 2s+1).
inline double gaussian(std::uint64_t seed, std::uint64_t k, std::uint64_t s = 0) {
  const double u1 = uniform01(seed, k, 2 * s);
  const double u2 = uniform01(seed, k, 2 * s + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace otoclock::rng
