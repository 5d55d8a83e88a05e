#include "kerrml/fock.hpp"

#include <cmath>
#include <string>

#include "kerrml/errors.hpp"
#include "kerrml/specfun.hpp"

namespace kerrml {

namespace {

void check_policy(const TruncationPolicy& policy) {
  if (policy.cutoff < 1) {
    throw domain_error("TruncationPolicy: cutoff must be >= 1");
  }
  if (!(policy.tail_tol > 0.0)) {
    throw domain_error("TruncationPolicy: tail_tol must be positive");
  }
}

}  // namespace

void FockVector::normalize() {
  const double n2 = amps.squaredNorm();
  if (!(n2 > 0.0)) {
    throw numerical_error("FockVector::normalize: zero-norm state");
  }
  amps /= std::sqrt(n2);
}

FockVector coherent_amplitudes(complexd alpha0, const TruncationPolicy& policy) {
  check_policy(policy);
  const double abs2 = std::norm(alpha0);
  if (abs2 > static_cast<double>(policy.cutoff) / 3.0) {
    throw domain_error("coherent_amplitudes: |alpha0|^2 = " +
                       std::to_string(abs2) + " exceeds cutoff/3 safety bound");
  }
  const int dim = policy.cutoff + 1;
  const LogFactorialTable lf(static_cast<std::size_t>(policy.cutoff));

  FockVector state;
  state.num_modes = 1;
  state.cutoff = policy.cutoff;
  state.amps.resize(dim);
  // amps[n] = e^{-|a0|^2/2} a0^n / sqrt(n!), built multiplicatively so the
  // n! never appears in linear space.
  complexd power{1.0, 0.0};
  for (int n = 0; n < dim; ++n) {
    state.amps[n] = power * std::exp(-0.5 * abs2 - 0.5 * lf(n));
    power *= alpha0;
  }
  if (state.norm2() < 1.0 - policy.tail_tol) {
    throw domain_error(
        "coherent_amplitudes: cutoff too small for requested tail tolerance");
  }
  state.normalize();
  return state;
}

FockVector squeezed_amplitudes(complexd alpha0, double r0,
                               const TruncationPolicy& policy) {
  check_policy(policy);
  if (r0 < 0.0) {
    throw domain_error("squeezed_amplitudes: r0 must be nonnegative");
  }
  const double sinh_r = std::sinh(r0);
  const double nbar = std::norm(alpha0) + sinh_r * sinh_r;
  if (nbar > static_cast<double>(policy.cutoff) / 3.0) {
    throw domain_error("squeezed_amplitudes: mean photon number " +
                       std::to_string(nbar) + " exceeds cutoff/3 safety bound");
  }
  // Zero-squeezing limit: lambda -> 0 makes z diverge while the product
  // lambda^{n/2} H_n(z) tends to alpha0^n; evaluate that limit analytically.
  if (r0 < 1e-8) return coherent_amplitudes(alpha0, policy);

  const double lambda = std::tanh(r0) / 2.0;
  const double sqrt_lambda = std::sqrt(lambda);
  const complexd z = sqrt_lambda * alpha0 + std::conj(alpha0) / (2.0 * sqrt_lambda);
  const complexd prefactor_log =
      -0.5 * std::norm(alpha0) - lambda * alpha0 * alpha0 -
      complexd{0.5 * std::log(std::cosh(r0)), 0.0};

  const int dim = policy.cutoff + 1;
  const LogFactorialTable lf(static_cast<std::size_t>(policy.cutoff));

  FockVector state;
  state.num_modes = 1;
  state.cutoff = policy.cutoff;
  state.amps.resize(dim);
  for (int n = 0; n < dim; ++n) {
    const double log_scale = 0.5 * n * std::log(lambda) - 0.5 * lf(n);
    state.amps[n] = std::exp(prefactor_log + complexd{log_scale, 0.0}) *
                    hermite(static_cast<unsigned>(n), z);
  }
  if (state.norm2() < 1.0 - policy.tail_tol) {
    throw domain_error(
        "squeezed_amplitudes: cutoff too small for requested tail tolerance");
  }
  state.normalize();
  return state;
}

DisplacementMatrix displacement_matrix(complexd alpha,
                                       const TruncationPolicy& policy) {
  check_policy(policy);
  const double abs2 = std::norm(alpha);
  if (abs2 >= static_cast<double>(policy.cutoff)) {
    throw domain_error("displacement_matrix: |alpha|^2 = " +
                       std::to_string(abs2) + " must be < cutoff");
  }
  const int dim = policy.cutoff + 1;
  DisplacementMatrix result;
  result.alpha = alpha;
  result.entries.resize(dim, dim);
  if (alpha == complexd{0.0, 0.0}) {
    result.entries.setIdentity();
    return result;
  }

  const LogFactorialTable lf(static_cast<std::size_t>(policy.cutoff));
  const double gauss = std::exp(-0.5 * abs2);
  // Powers of +alpha and -alpha up to the maximum index difference.
  Eigen::VectorXcd pow_pos(dim), pow_neg(dim);
  pow_pos[0] = pow_neg[0] = complexd{1.0, 0.0};
  for (int p = 1; p < dim; ++p) {
    pow_pos[p] = pow_pos[p - 1] * alpha;
    pow_neg[p] = pow_neg[p - 1] * (-alpha);
  }

  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m <= n; ++m) {
      const int k = n - m;
      const double ratio = std::exp(0.5 * (lf(m) - lf(n)));  // sqrt(m!/n!)
      const double lag = assoc_laguerre(static_cast<unsigned>(m), k, abs2);
      // Upper-left convention: row n >= column m uses the direct formula.
      result.entries(n, m) = ratio * gauss * pow_pos[k] * lag;
      if (n != m) {
        // d_mn(alpha) = conj(d_nm(-alpha)); same (n >= m) formula at -alpha.
        result.entries(m, n) = std::conj(ratio * gauss * pow_neg[k] * lag);
      }
    }
  }
  return result;
}

DensityMatrix pure_density(const FockVector& state) {
  if (state.num_modes != 1) {
    throw domain_error("pure_density: expects a single-mode state");
  }
  DensityMatrix rho;
  rho.cutoff = state.cutoff;
  rho.entries = state.amps * state.amps.adjoint();
  return rho;
}

double mean_photon_number(const FockVector& state) {
  const int dim = state.dim_per_mode();
  double weighted = 0.0;
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(state.amps.size()); ++i) {
    // Total photon number of basis state i: sum of per-mode digits in the
    // lexicographic expansion of the flat index.
    int photons = 0;
    int rest = i;
    for (int mode = 0; mode < state.num_modes; ++mode) {
      photons += rest % dim;
      rest /= dim;
    }
    const double p = std::norm(state.amps[i]);
    weighted += photons * p;
    total += p;
  }
  if (!(total > 0.0)) {
    throw numerical_error("mean_photon_number: zero-norm state");
  }
  return weighted / total;
}

complexd inner(const FockVector& a, const FockVector& b) {
  if (a.num_modes != b.num_modes || a.cutoff != b.cutoff) {
    throw domain_error("inner: mismatched state shapes");
  }
  return a.amps.dot(b.amps);
}

}  // namespace kerrml
