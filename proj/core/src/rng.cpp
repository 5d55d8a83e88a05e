#include "kerrml/rng.hpp"

#include <cmath>

#include "kerrml/errors.hpp"

namespace kerrml {
namespace {

// SplitMix64 output finalizer (Steele, Lea, Flood 2014). Bijective on u64.
std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t tag) const {
  // Child key mixes the tag with an odd constant so stream(0) != advance().
  return Rng(splitmix64_finalize(state_ + 0x632BE59BD9B4E019ull * (tag + 1)));
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // Box-Muller on (0,1] x [0,1): u must be nonzero for the log.
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double theta = 2.0 * 3.14159265358979323846 * v;
  cached_gaussian_ = r * std::sin(theta);
  has_cached_gaussian_ = true;
  return r * std::cos(theta);
}

int Rng::bernoulli_pm1(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw numerical_error("bernoulli_pm1: probability outside [0, 1]");
  }
  return uniform() < p ? +1 : -1;
}

}  // namespace kerrml
