#pragma once

#include <cmath>
#include <cstdint>

// Deterministic RNG. std::mt19937 with std distributions is not guaranteed
// to produce identical streams across standard libraries, and several
// contracts here (gen, oracles) require byte-identical output per seed, so
// we use a splitmix64 stream directly.

namespace ccb {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal via Box-Muller (pairs discarded; called rarely)
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }
};

// Derives an independent stream for a (seed, index) pair, so per-sample
// work is schedule independent.
inline SplitMix64 derived_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mix.next_u64();
  return mix;
}

}  // namespace ccb
