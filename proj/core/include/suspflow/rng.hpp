#pragma once

#include <cstdint>

namespace suspflow {

/// Deterministic 64-bit generator (splitmix64, Steele/Lea/Flood constants).
/// The algorithm is fixed so that fixtures reproduce bit-for-bit across
/// implementations: state += 0x9E3779B97F4A7C15; output is the state mixed by
/// two xor-shift-multiply rounds (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform dyadic rational k/2^48 in [0, 1). Coordinates drawn from this
  /// grid keep every unimodular integer-matrix action exact in doubles
  /// (row sums up to 31 never round), so long orbits do not drift.
  double next_dyadic48() { return static_cast<double>(next() >> 16) * 0x1.0p-48; }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

}  // namespace suspflow
