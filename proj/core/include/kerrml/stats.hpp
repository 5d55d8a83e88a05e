#pragma once

#include <cstddef>
#include <vector>

namespace kerrml {

// Moment and quantile summary of one sample. Moments are population
// (biased) estimators; kurtosis is excess (uniform data gives -1.2).
// Quantiles use linear interpolation between order statistics.
struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
};

SummaryStats summarize(const std::vector<double>& values);

// Ordinary least squares y = slope * x + intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

}  // namespace kerrml
