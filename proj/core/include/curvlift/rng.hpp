#ifndef CURVLIFT_RNG_HPP
#define CURVLIFT_RNG_HPP

#include <cstdint>

namespace curvlift {

/// SplitMix64 (public domain, Steele et al.); the documented PRNG behind every
/// randomized quantity in the library, so runs are reproducible bit for bit.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// uniform in [0,1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// uniform in [-1,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

}  // namespace curvlift

#endif
