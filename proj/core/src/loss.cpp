#include "kerrml/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kerrml/encode.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/rng.hpp"

namespace kerrml {

namespace {

void check_params(const LossParams& params) {
  if (params.gamma < 0.0) throw domain_error("LossParams: gamma must be >= 0");
  if (params.t < 0.0) throw domain_error("LossParams: t must be >= 0");
}

}  // namespace

DensityMatrix damped_state(complexd alpha0, const LossParams& params,
                           const TruncationPolicy& policy) {
  check_params(params);
  const FockVector initial = coherent_amplitudes(alpha0, policy);
  const double abs2 = std::norm(alpha0);
  const double ct = params.chi * params.t;
  const double gt = params.gamma * params.t;
  const int dim = policy.cutoff + 1;

  DensityMatrix rho;
  rho.cutoff = policy.cutoff;
  rho.entries.resize(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const complexd rho0 = initial.amps[n] * std::conj(initial.amps[m]);
      const double k = double(n - m);
      // f_nm^{(n+m)/2} expanded in polar form; keeps the complex power
      // single-valued for all n + m.
      const complexd half_power =
          std::exp(complexd{-0.5 * gt * double(n + m),
                            -ct * (double(n) * n - double(m) * m)});
      complexd interaction{1.0, 0.0};
      if (params.gamma > 0.0) {
        const complexd f_nm = std::exp(complexd{-gt, -2.0 * ct * k});
        const complexd delta{0.0, 2.0 * params.chi * k / params.gamma};
        interaction = std::exp(abs2 * (complexd{1.0, 0.0} - f_nm) /
                               (complexd{1.0, 0.0} + delta));
      }
      // gamma = 0: delta_nm diverges, interaction term -> 1 (pure Kerr).
      rho.entries(n, m) = rho0 * half_power * interaction;
    }
  }
  return rho;
}

double damped_decision(complexd alpha, const LossParams& params,
                       complexd alpha0, const TruncationPolicy& policy) {
  const DensityMatrix rho = damped_state(alpha0, params, policy);
  const Eigen::MatrixXcd undisp = displacement_matrix(-alpha, policy).entries;
  const Eigen::MatrixXcd displaced = undisp * rho.entries * undisp.adjoint();

  complexd d{0.0, 0.0};
  for (int k = 0; k < displaced.rows(); ++k) {
    d += (k % 2 == 0) ? displaced(k, k) : -displaced(k, k);
  }
  if (std::abs(d.imag()) > 1e-6) {
    throw numerical_error("damped_decision: imaginary residue " +
                          std::to_string(d.imag()) + " exceeds 1e-6");
  }
  return std::clamp(d.real(), -1.0, 1.0);
}

double short_time_coherence(complexd alpha_i, complexd alpha_j, double gamma,
                            double t) {
  if (gamma < 0.0 || t < 0.0) {
    throw domain_error("short_time_coherence: gamma, t must be >= 0");
  }
  return std::exp(-gamma * t * std::norm(alpha_i - alpha_j));
}

double exact_coherence_factor(complexd alpha_i, complexd alpha_j, double gamma,
                              double t) {
  if (gamma < 0.0 || t < 0.0) {
    throw domain_error("exact_coherence_factor: gamma, t must be >= 0");
  }
  return std::exp(-(1.0 - std::exp(-gamma * t)) * std::norm(alpha_i - alpha_j));
}

DensityMatrix phase_diffused_state(complexd alpha0, double Gamma, double t,
                                   int n_samples, std::uint64_t seed, double x,
                                   const TruncationPolicy& policy) {
  if (Gamma < 0.0 || t < 0.0) {
    throw domain_error("phase_diffused_state: Gamma, t must be >= 0");
  }
  if (Gamma == 0.0 || t == 0.0) {
    return pure_density(encode_one_mode(x, alpha0, policy));
  }
  if (n_samples < 1) {
    throw domain_error("phase_diffused_state: need >= 1 sample");
  }

  const double theta_std = std::sqrt(2.0 * Gamma * t);
  const Rng root(seed);
  const int dim = policy.cutoff + 1;
  DensityMatrix rho;
  rho.cutoff = policy.cutoff;
  rho.entries.setZero(dim, dim);
  for (int s = 0; s < n_samples; ++s) {
    Rng stream = root.stream(static_cast<std::uint64_t>(s));
    const double theta = theta_std * stream.gaussian();
    const complexd rotated = alpha0 * std::exp(complexd{0.0, theta});
    const FockVector state = encode_one_mode(x, rotated, policy);
    rho.entries.noalias() += state.amps * state.amps.adjoint();
  }
  rho.entries /= double(n_samples);
  return rho;
}

DensityMatrix dephasing_envelope_state(complexd alpha0, double Gamma, double t,
                                       double x,
                                       const TruncationPolicy& policy) {
  if (Gamma < 0.0 || t < 0.0) {
    throw domain_error("dephasing_envelope_state: Gamma, t must be >= 0");
  }
  DensityMatrix rho = pure_density(encode_one_mode(x, alpha0, policy));
  for (int n = 0; n < rho.dim(); ++n) {
    for (int m = 0; m < rho.dim(); ++m) {
      const double k = double(n - m);
      rho.entries(n, m) *= std::exp(-Gamma * t * k * k);
    }
  }
  return rho;
}

}  // namespace kerrml
