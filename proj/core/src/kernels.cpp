#include "kerrml/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kerrml/errors.hpp"
#include "kerrml/rng.hpp"
#include "parallel.hpp"

namespace kerrml {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Probability weights |f_n|^2 of the (renormalized) fiducial state.
Eigen::VectorXd fiducial_weights(complexd alpha0, double r0,
                                 const TruncationPolicy& policy) {
  const FockVector f = r0 == 0.0 ? coherent_amplitudes(alpha0, policy)
                                 : squeezed_amplitudes(alpha0, r0, policy);
  return f.amps.cwiseAbs2();
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Shared series for the two-mode closed forms. Weights are normalized, so
// the phase-free sum is exactly 1 and k(x, x) = 1.
double two_mode_series(const Eigen::VectorXd& w, const DataPoint& x,
                       const DataPoint& y) {
  if (x.dim() != 2 || y.dim() != 2) {
    throw domain_error("two-mode kernel: expects 2-coordinate points");
  }
  const double d1 = y.coords[0] - x.coords[0];
  const double d2 = y.coords[1] - x.coords[1];
  const double d3 = y.coords[0] * y.coords[1] - x.coords[0] * x.coords[1];
  const int dim = static_cast<int>(w.size());

  complexd sum{0.0, 0.0};
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const double phase =
          kPi * (double(n) * n * d1 + double(m) * m * d2 + 2.0 * n * m * d3);
      sum += w[n] * w[m] * std::exp(complexd{0.0, phase});
    }
  }
  return clamp01(std::norm(sum));
}

// Encodes a point per the spec'd kind for oracle-style evaluation.
FockVector encode_for_spec(const KernelSpec& spec, const DataPoint& p) {
  if (p.dim() == 1) {
    return encode_one_mode(p.coords[0], spec.alpha0, spec.policy);
  }
  if (p.dim() == 2) {
    return encode_two_mode(p, spec.alpha0, spec.r0, spec.policy);
  }
  throw domain_error("kernel: unsupported point dimension " +
                     std::to_string(p.dim()));
}

double squared_distance(const DataPoint& x, const DataPoint& y) {
  if (x.dim() != y.dim()) {
    throw domain_error("rbf_kernel: mismatched point dimensions");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    const double d = x.coords[k] - y.coords[k];
    acc += d * d;
  }
  return acc;
}

// Builds the Gram of |<phi_i|phi_j>|^2 from precomputed unit-norm feature
// vectors; used by all state-overlap kernel kinds.
GramMatrix overlap_gram(const std::vector<FockVector>& states) {
  const long n = static_cast<long>(states.size());
  GramMatrix gram;
  gram.entries.resize(n, n);
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    gram.entries(i, i) = 1.0;
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
      const double k = clamp01(std::norm(inner(states[i], states[j])));
      gram.entries(i, j) = k;
      gram.entries(j, i) = k;
    }
  });
  return gram;
}

std::vector<FockVector> encode_all(const std::vector<DataPoint>& points,
                                   const KernelSpec& spec) {
  std::vector<FockVector> states(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) {
    states[i] = encode_for_spec(spec, points[i]);
  });
  return states;
}

}  // namespace

double kernel_1mode(double x, double y, complexd alpha0,
                    const TruncationPolicy& policy) {
  const Eigen::VectorXd w = fiducial_weights(alpha0, 0.0, policy);
  complexd sum{0.0, 0.0};
  for (int n = 0; n < w.size(); ++n) {
    sum += w[n] * std::exp(complexd{0.0, -kPi * (x - y) * double(n) * n});
  }
  return clamp01(std::norm(sum));
}

double kernel_2mode_coherent(const DataPoint& x, const DataPoint& y,
                             complexd alpha0, const TruncationPolicy& policy) {
  return two_mode_series(fiducial_weights(alpha0, 0.0, policy), x, y);
}

double kernel_2mode_squeezed(const DataPoint& x, const DataPoint& y,
                             complexd alpha0, double r0,
                             const TruncationPolicy& policy) {
  if (r0 < 0.0) throw domain_error("kernel_2mode_squeezed: r0 must be >= 0");
  return two_mode_series(fiducial_weights(alpha0, r0, policy), x, y);
}

double fidelity_kernel(const FockVector& a, const FockVector& b) {
  return clamp01(std::norm(inner(a, b)));
}

double rbf_kernel(const DataPoint& x, const DataPoint& y, double gamma) {
  if (!(gamma > 0.0)) {
    throw domain_error("rbf_kernel: gamma must be positive (resolve first)");
  }
  return std::exp(-gamma * squared_distance(x, y));
}

double resolve_gamma_scale(const std::vector<DataPoint>& points) {
  if (points.empty()) {
    throw domain_error("resolve_gamma_scale: empty dataset");
  }
  const std::size_t d = points.front().dim();
  double var_sum = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double mean = 0.0;
    for (const auto& p : points) mean += p.coords.at(k);
    mean /= double(points.size());
    double var = 0.0;
    for (const auto& p : points) {
      const double c = p.coords.at(k) - mean;
      var += c * c;
    }
    var_sum += var / double(points.size());
  }
  const double mean_var = var_sum / double(d);
  if (!(mean_var > 0.0)) {
    throw domain_error("resolve_gamma_scale: degenerate dataset variance");
  }
  return 1.0 / (double(d) * mean_var);
}

double kernel_eval(const KernelSpec& spec, const DataPoint& x,
                   const DataPoint& y) {
  switch (spec.kind) {
    case KernelKind::kerr_coherent_1mode:
      return kernel_1mode(x.coords.at(0), y.coords.at(0), spec.alpha0,
                          spec.policy);
    case KernelKind::kerr_coherent_2mode:
      return kernel_2mode_coherent(x, y, spec.alpha0, spec.policy);
    case KernelKind::kerr_squeezed_2mode:
      return kernel_2mode_squeezed(x, y, spec.alpha0, spec.r0, spec.policy);
    case KernelKind::fidelity_generic:
      return fidelity_kernel(encode_for_spec(spec, x), encode_for_spec(spec, y));
    case KernelKind::rbf:
      return rbf_kernel(x, y, spec.gamma_rbf);
  }
  throw domain_error("kernel_eval: unknown kernel kind");
}

GramMatrix gram_exact(const std::vector<DataPoint>& points,
                      const KernelSpec& spec) {
  if (points.empty()) throw domain_error("gram_exact: empty point set");

  if (spec.kind == KernelKind::rbf) {
    const double gamma = spec.gamma_rbf == gamma_scale_sentinel
                             ? resolve_gamma_scale(points)
                             : spec.gamma_rbf;
    const long n = static_cast<long>(points.size());
    GramMatrix gram;
    gram.entries.resize(n, n);
    detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      gram.entries(i, i) = 1.0;
      for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
        const double k = rbf_kernel(points[i], points[j], gamma);
        gram.entries(i, j) = k;
        gram.entries(j, i) = k;
      }
    });
    return gram;
  }
  // State-overlap kinds share one path: encode once, then pairwise overlaps.
  return overlap_gram(encode_all(points, spec));
}

GramMatrix gram_cross(const std::vector<DataPoint>& test_points,
                      const std::vector<DataPoint>& train_points,
                      const KernelSpec& spec) {
  if (test_points.empty() || train_points.empty()) {
    throw domain_error("gram_cross: empty point set");
  }
  const long rows = static_cast<long>(test_points.size());
  const long cols = static_cast<long>(train_points.size());
  GramMatrix gram;
  gram.entries.resize(rows, cols);

  if (spec.kind == KernelKind::rbf) {
    const double gamma = spec.gamma_rbf == gamma_scale_sentinel
                             ? resolve_gamma_scale(train_points)
                             : spec.gamma_rbf;
    detail::parallel_for(static_cast<std::size_t>(rows), [&](std::size_t i) {
      for (long j = 0; j < cols; ++j) {
        gram.entries(i, j) = rbf_kernel(test_points[i], train_points[j], gamma);
      }
    });
    return gram;
  }

  const std::vector<FockVector> test_states = encode_all(test_points, spec);
  const std::vector<FockVector> train_states = encode_all(train_points, spec);
  detail::parallel_for(static_cast<std::size_t>(rows), [&](std::size_t i) {
    for (long j = 0; j < cols; ++j) {
      gram.entries(i, j) =
          clamp01(std::norm(inner(test_states[i], train_states[j])));
    }
  });
  return gram;
}

GramMatrix gram_sampled(const std::vector<DataPoint>& points,
                        const KernelSpec& spec, long shots,
                        std::uint64_t seed) {
  if (shots < 1) throw domain_error("gram_sampled: shots must be >= 1");
  GramMatrix gram = gram_exact(points, spec);
  const long n = gram.rows();
  const Rng root(seed);
  // One Bernoulli stream per upper-triangle entry, keyed by its row-major
  // position; mirrored to the lower triangle. Thread-schedule independent.
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    for (long j = static_cast<long>(i); j < n; ++j) {
      const double p = gram.entries(i, j);
      Rng stream = root.stream(static_cast<std::uint64_t>(i) *
                                   static_cast<std::uint64_t>(n) +
                               static_cast<std::uint64_t>(j));
      long successes = 0;
      for (long s = 0; s < shots; ++s) {
        if (stream.uniform() < p) ++successes;
      }
      const double estimate = double(successes) / double(shots);
      gram.entries(i, j) = estimate;
      gram.entries(j, i) = estimate;
    }
  });
  gram.provenance = GramMatrix::Provenance::sampled;
  gram.shots = shots;
  gram.seed = seed;
  return gram;
}

double kernel_normalization_check(double y, const KernelSpec& spec,
                                  int quadrature_n) {
  if (quadrature_n < 2) {
    throw domain_error("kernel_normalization_check: need >= 2 nodes");
  }
  // Trapezoid over one period x in [0, 2]; integrand is periodic so the end
  // weights pair up exactly.
  const double h = 2.0 / double(quadrature_n);
  double acc = 0.0;
  for (int i = 0; i <= quadrature_n; ++i) {
    const double x = h * double(i);
    const double k = kernel_1mode(x, y, spec.alpha0, spec.policy);
    const double weight = (i == 0 || i == quadrature_n) ? 0.5 : 1.0;
    acc += weight * k;
  }
  return 0.5 * acc * h;
}

}  // namespace kerrml
