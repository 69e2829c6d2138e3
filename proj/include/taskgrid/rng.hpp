#pragma once

#include <cstdint>

namespace taskgrid {

/// Counter-based deterministic random generator (SplitMix64, Steele et al.,
/// "Fast splittable pseudorandom number generators", OOPSLA 2014).
///
/// The state advances by a fixed odd increment and each output is an
/// avalanche mix of the counter, so the i-th output is a pure function of
/// (seed, i). All arithmetic is on uint64_t, which makes the stream
/// byte-identical across platforms; golden tests rely on that.
///
/// Streams are split by key: derive_seed(seed, key) mixes the key into a
/// fresh seed, so parallel consumers draw from disjoint deterministic
/// streams without sharing state.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound), bound > 0. Unbiased via rejection.
  uint64_t next_below(uint64_t bound) {
    const uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi], inclusive on both ends.
  int64_t next_range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(next_below(static_cast<uint64_t>(hi - lo + 1)));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  /// Derive an independent stream seed from (seed, key).
  static uint64_t derive_seed(uint64_t seed, uint64_t key) {
    SplitMix64 g(seed ^ (key * 0xD1342543DE82EF95ULL));
    g.next_u64();
    return g.next_u64();
  }

  SplitMix64 split(uint64_t key) { return SplitMix64(derive_seed(next_u64(), key)); }

 private:
  uint64_t state_;
};

}  // namespace taskgrid
