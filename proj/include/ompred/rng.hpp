#pragma once

#include <cstdint>

namespace ompred {

// SplitMix64: a counter-based generator (Weyl counter + 64-bit finaliser).
// Every draw is a pure function of (seed, draw index), and the integer and
// floating-point helpers below use only integer arithmetic and exact scaling,
// so sequences reproduce bit-for-bit on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Independent stream derived from this generator's seed and `stream`.
  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(mix(state_ ^ mix(stream + 0x632BE59BD9B4E019ULL)));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on {0, ..., bound - 1}; rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// +1 or -1 with equal probability.
  int rademacher() { return (next() >> 63) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace ompred
