#include "kerrml/measure.hpp"

#include <algorithm>
#include <cmath>

#include "kerrml/errors.hpp"
#include "parallel.hpp"

namespace kerrml {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Alternating-parity sum over a displaced amplitude vector.
double parity_sum(const Eigen::VectorXcd& psi) {
  double d = 0.0;
  for (int k = 0; k < psi.size(); ++k) {
    const double p = std::norm(psi[k]);
    d += (k % 2 == 0) ? p : -p;
  }
  return d;
}

double clamp_pm1(double d) { return std::clamp(d, -1.0, 1.0); }

}  // namespace

double decision_1mode_raw(complexd mu, double x, complexd alpha0,
                          const TruncationPolicy& policy) {
  const FockVector phi = encode_one_mode(x, alpha0, policy);
  const DisplacementMatrix undisp = displacement_matrix(-mu, policy);
  return parity_sum(undisp.entries * phi.amps);
}

double decision_1mode(complexd mu, double x, complexd alpha0,
                      const TruncationPolicy& policy) {
  return clamp_pm1(decision_1mode_raw(mu, x, alpha0, policy));
}

Labeller::Labeller(const DisplacementPair& pair, complexd alpha0, double r0,
                   const TruncationPolicy& policy)
    : disp_mu_(displacement_matrix(-pair.mu, policy).entries),
      disp_nu_(displacement_matrix(-pair.nu, policy).entries),
      cutoff_(policy.cutoff) {
  const FockVector f = r0 == 0.0 ? coherent_amplitudes(alpha0, policy)
                                 : squeezed_amplitudes(alpha0, r0, policy);
  fiducial_ = f.amps;
}

double Labeller::decision(const DataPoint& x) const {
  if (x.dim() != 2) {
    throw domain_error("Labeller: expects 2-coordinate points");
  }
  const int dim = cutoff_ + 1;
  const double x1 = x.coords[0];
  const double x2 = x.coords[1];
  const double x3 = x1 * x2;

  Eigen::MatrixXcd phi(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const double phase =
          kPi * (double(n) * n * x1 + double(m) * m * x2 + 2.0 * n * m * x3);
      phi(n, m) = fiducial_[n] * fiducial_[m] * std::exp(complexd{0.0, -phase});
    }
  }
  // Joint displaced amplitudes: Psi = D(-mu) Phi D(-nu)^T.
  const Eigen::MatrixXcd psi = disp_mu_ * phi * disp_nu_.transpose();
  double d = 0.0;
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const double p = std::norm(psi(n, m));
      d += ((n + m) % 2 == 0) ? p : -p;
    }
  }
  return clamp_pm1(d);
}

double decision_2mode(const DisplacementPair& pair, const DataPoint& x,
                      complexd alpha0, double r0,
                      const TruncationPolicy& policy) {
  return Labeller(pair, alpha0, r0, policy).decision(x);
}

int label_point(const DataPoint& x, const DisplacementPair& pair,
                complexd alpha0, double r0, const TruncationPolicy& policy) {
  return Labeller(pair, alpha0, r0, policy).label(x);
}

std::vector<int> label_dataset(const std::vector<DataPoint>& points,
                               const DisplacementPair& pair, complexd alpha0,
                               double r0, const TruncationPolicy& policy) {
  const Labeller labeller(pair, alpha0, r0, policy);
  std::vector<int> labels(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) {
    labels[i] = labeller.label(points[i]);
  });
  return labels;
}

ParitySampleResult sample_parity(double d, int shots, Rng& rng) {
  if (std::abs(d) > 1.0 + 1e-9) {
    throw domain_error("sample_parity: decision value " + std::to_string(d) +
                       " outside [-1, 1]");
  }
  if (shots < 1) throw domain_error("sample_parity: shots must be >= 1");
  const double p_plus = 0.5 * (1.0 + clamp_pm1(d));
  ParitySampleResult result;
  result.outcomes.resize(static_cast<std::size_t>(shots));
  long sum = 0;
  for (int s = 0; s < shots; ++s) {
    const int y = rng.bernoulli_pm1(p_plus);
    result.outcomes[static_cast<std::size_t>(s)] = y;
    sum += y;
  }
  result.empirical_mean = double(sum) / double(shots);
  return result;
}

std::vector<DisplacementPair> sample_displacements(double sigma, int count,
                                                   double max_abs2,
                                                   std::uint64_t seed) {
  if (!(sigma > 0.0)) {
    throw domain_error("sample_displacements: sigma must be positive");
  }
  if (count < 0) {
    throw domain_error("sample_displacements: count must be nonnegative");
  }
  if (!(max_abs2 > 0.0)) {
    throw domain_error("sample_displacements: max_abs2 must be positive");
  }
  const double scale = std::sqrt(sigma);  // per-component std dev
  const Rng root(seed);
  std::vector<DisplacementPair> pairs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng stream = root.stream(static_cast<std::uint64_t>(i));
    auto draw = [&]() {
      while (true) {
        const double re = scale * stream.gaussian();
        const double im = scale * stream.gaussian();
        const complexd z{re, im};
        if (std::norm(z) < max_abs2) return z;
      }
    };
    pairs[static_cast<std::size_t>(i)].mu = draw();
    pairs[static_cast<std::size_t>(i)].nu = draw();
  }
  return pairs;
}

int true_label_1mode(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw domain_error("true_label_1mode: x must lie in [0, 1]");
  }
  return std::cos(kPi * x) >= 0.0 ? +1 : -1;
}

bool displacement_within_guard(complexd mu, const TruncationPolicy& policy) {
  return std::abs(mu) <= 0.5 * std::sqrt(double(policy.cutoff));
}

}  // namespace kerrml
