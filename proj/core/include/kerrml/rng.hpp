#pragma once

#include <cstdint>

namespace kerrml {

// Deterministic, platform-independent random number generator built on the
// SplitMix64 finalizer. A generator is identified by a 64-bit key; derived
// streams (see stream()) are statistically independent of the parent and of
// each other, which lets callers key sub-streams by (seed, index) so results
// do not depend on evaluation order or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent child generator for the given tag. Same (seed, tag) always
  // yields the same stream, on every platform.
  Rng stream(std::uint64_t tag) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; generates pairs, caches the second value.
  double gaussian();

  // +1 with probability p, else -1.
  int bernoulli_pm1(double p);

 private:
  std::uint64_t state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace kerrml
