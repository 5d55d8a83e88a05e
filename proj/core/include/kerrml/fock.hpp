#pragma once

#include <Eigen/Dense>
#include <complex>

namespace kerrml {

using complexd = std::complex<double>;

// Number-basis truncation: amplitudes are kept for n = 0..cutoff per mode.
// tail_tol bounds the probability mass the truncation is allowed to discard.
struct TruncationPolicy {
  int cutoff = 10;
  double tail_tol = 1e-8;

  // Default policy for single-mode states (unit-amplitude fiducial state).
  static TruncationPolicy one_mode() { return {30, 1e-8}; }
  // Default policy for two-mode states, where dimension grows quadratically.
  // The unit-amplitude coherent tail above n = 10 is 1.005e-8, so the
  // tolerance here must sit above that to admit the standard configuration.
  static TruncationPolicy two_mode() { return {10, 1e-7}; }
};

// Pure state over P modes, each truncated at `cutoff`. Amplitudes are stored
// lexicographically in (n_1, ..., n_P); for two modes index = n*(N+1) + m.
struct FockVector {
  int num_modes = 1;
  int cutoff = 0;
  Eigen::VectorXcd amps;

  int dim_per_mode() const { return cutoff + 1; }
  double norm2() const { return amps.squaredNorm(); }
  void normalize();
};

// Flat index of |n, m> in a two-mode FockVector with the given cutoff.
inline int fock_index(int n, int m, int cutoff) {
  return n * (cutoff + 1) + m;
}

// Matrix elements d_nm(alpha) = <n|D(alpha)|m> of the displacement operator
// on the truncated basis. Unitary up to truncation effects near the cutoff.
struct DisplacementMatrix {
  complexd alpha;
  Eigen::MatrixXcd entries;
};

// Single-mode mixed state rho_nm on the truncated number basis.
// Physical states are Hermitian, unit-trace, positive semidefinite.
struct DensityMatrix {
  int cutoff = 0;
  Eigen::MatrixXcd entries;

  int dim() const { return cutoff + 1; }
  complexd trace() const { return entries.trace(); }
};

// Rank-1 projector |state><state| for a single-mode pure state.
DensityMatrix pure_density(const FockVector& state);

// Coherent state |alpha0> in the truncated number basis:
// amps[n] = e^{-|alpha0|^2/2} alpha0^n / sqrt(n!), renormalized to unit norm
// after truncation (keeps parity expectations bounded by 1 exactly).
// Requires |alpha0|^2 <= cutoff/3 so the Poisson tail above the cutoff is
// negligible; throws domain_error otherwise, and if the retained norm still
// falls below 1 - tail_tol.
FockVector coherent_amplitudes(complexd alpha0, const TruncationPolicy& policy);

// Displaced squeezed state with displacement alpha0 and squeezing r0 >= 0:
// amps[n] ∝ lambda^{n/2} e^{-|a0|^2/2 - lambda a0^2} H_n(z) / sqrt(n! cosh r0),
// lambda = tanh(r0)/2, z = sqrt(lambda) a0 + a0* / (2 sqrt(lambda)),
// renormalized to unit norm after truncation. The r0 -> 0 limit is handled
// analytically by dispatching to coherent_amplitudes.
// Requires |alpha0|^2 + sinh^2(r0) <= cutoff/3 and r0 >= 0.
FockVector squeezed_amplitudes(complexd alpha0, double r0,
                               const TruncationPolicy& policy);

// d_nm(alpha) for n >= m via
//   sqrt(m!/n!) e^{-|alpha|^2/2} alpha^{n-m} L_m^{n-m}(|alpha|^2),
// lower triangle via d_nm(alpha) = conj(d_mn(-alpha)). Requires
// |alpha|^2 < cutoff.
DisplacementMatrix displacement_matrix(complexd alpha,
                                       const TruncationPolicy& policy);

// <n> = sum over basis states of (total photon number) * probability,
// normalized by the state norm. Works for any number of modes.
double mean_photon_number(const FockVector& state);

// Hermitian inner product <a|b>. Requires identical shapes.
complexd inner(const FockVector& a, const FockVector& b);

}  // namespace kerrml
