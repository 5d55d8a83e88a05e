#pragma once

#include <cstdint>

#include "kerrml/fock.hpp"

namespace kerrml {

// Open-system parameters. Formulas consume the dimensionless products
// chi*t (Kerr phase) and gamma*t (integrated loss).
struct LossParams {
  double chi = 0.0;    // Kerr rate
  double gamma = 0.0;  // photon loss rate, >= 0
  double t = 0.0;      // evolution time, >= 0
};

// Closed-form Kerr + photon-loss evolution of an initial coherent state:
//   rho_nm(t) = rho_nm(0) * e^{-gt(n+m)/2} e^{-i ct (n^2 - m^2)}
//               * exp[|a0|^2 (1 - f_nm) / (1 + i d_nm)],
// f_nm = e^{-gt - 2 i ct (n - m)}, d_nm = 2 c (n - m) / g (c = chi, g =
// gamma). The gamma = 0 branch reduces analytically to pure Kerr phases.
// Matching the encoding requires chi * t = pi * x.
DensityMatrix damped_state(complexd alpha0, const LossParams& params,
                           const TruncationPolicy& policy = TruncationPolicy::one_mode());

// Displaced-parity decision on the damped state:
//   d(alpha, t) = sum_k (-1)^k (A rho(t) A†)_kk,  A = D(-alpha).
// The trace is real up to roundoff; an imaginary residue above 1e-6 raises
// numerical_error. Result clamped to [-1, 1].
double damped_decision(complexd alpha, const LossParams& params,
                       complexd alpha0,
                       const TruncationPolicy& policy = TruncationPolicy::one_mode());

// Short-time coherence decay between pointer states: e^{-gamma t |ai - aj|^2}.
// First-order (in gamma t) approximation of exact_coherence_factor.
double short_time_coherence(complexd alpha_i, complexd alpha_j, double gamma,
                            double t);

// Exact overlap-decay factor |<ai|aj>|^{2(1 - e^{-gamma t})}
//   = e^{-(1 - e^{-gamma t}) |ai - aj|^2}.
double exact_coherence_factor(complexd alpha_i, complexd alpha_j, double gamma,
                              double t);

// Phase-diffused encoded state by Monte Carlo: mixture over encoded states
// with fiducial amplitude alpha0 * e^{i theta}, theta ~ N(0, 2 Gamma t),
// n_samples draws keyed by seed. Gamma = 0 returns the pure projector.
DensityMatrix phase_diffused_state(complexd alpha0, double Gamma, double t,
                                   int n_samples, std::uint64_t seed, double x,
                                   const TruncationPolicy& policy = TruncationPolicy::one_mode());

// Analytic dephasing counterpart: encoded projector with off-diagonals
// damped by e^{-Gamma t (n - m)^2}.
DensityMatrix dephasing_envelope_state(complexd alpha0, double Gamma, double t,
                                       double x,
                                       const TruncationPolicy& policy = TruncationPolicy::one_mode());

}  // namespace kerrml
