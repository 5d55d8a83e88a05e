#pragma once

#include <complex>
#include <vector>

#include "kerrml/encode.hpp"
#include "kerrml/rng.hpp"

namespace testutil {

inline std::vector<kerrml::DataPoint> random_unit_square(std::uint64_t seed,
                                                         std::size_t n) {
  kerrml::Rng rng(seed);
  std::vector<kerrml::DataPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = rng.uniform();
    const double x2 = rng.uniform();
    points.emplace_back(x1, x2);
  }
  return points;
}

inline std::vector<double> random_unit_interval(std::uint64_t seed,
                                                std::size_t n) {
  kerrml::Rng rng(seed);
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform();
  return xs;
}

}  // namespace testutil
