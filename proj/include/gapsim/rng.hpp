#pragma once

#include <cmath>
#include <cstdint>

namespace gapsim {

// Deterministic, platform-independent random streams. The standard library
// distributions are implementation-defined, so uniform and Gaussian draws
// are mapped by hand from raw 64-bit words. Streams are derived by hashing
// (master_seed, salt...) through SplitMix64, so any (seed, lambda_index,
// sample_index) tuple names the same stream on every platform.

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Collapse a seed plus salts into a single stream key.
inline uint64_t derive_stream(uint64_t seed, uint64_t salt_a = 0, uint64_t salt_b = 0,
                              uint64_t salt_c = 0) {
  uint64_t s = seed;
  uint64_t k = splitmix64_next(s);
  s ^= salt_a + 0x9e3779b97f4a7c15ULL;
  k ^= splitmix64_next(s);
  s ^= salt_b + 0xd1b54a32d192ed03ULL;
  k ^= splitmix64_next(s);
  s ^= salt_c + 0x8cb92ba72f3d8dd7ULL;
  k ^= splitmix64_next(s);
  return k;
}

class Rng {
 public:
  explicit Rng(uint64_t stream_key) : state_(stream_key) {
    // Warm up so that nearby keys decorrelate.
    splitmix64_next(state_);
    splitmix64_next(state_);
  }

  uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-bound, bound].
  double uniform_symmetric(double bound) { return bound * (2.0 * uniform01() - 1.0); }

  /// Standard normal via Box-Muller (hand-rolled for determinism).
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace gapsim
