#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "kerrml/encode.hpp"
#include "kerrml/fock.hpp"

namespace kerrml {

enum class KernelKind {
  kerr_coherent_1mode,
  kerr_coherent_2mode,
  kerr_squeezed_2mode,
  fidelity_generic,
  rbf,
};

// Sentinel for gamma_rbf: resolve from the dataset ("scale" rule).
inline constexpr double gamma_scale_sentinel = -1.0;

struct KernelSpec {
  KernelKind kind = KernelKind::kerr_coherent_2mode;
  complexd alpha0{1.0, 0.0};
  double r0 = 0.0;
  double gamma_rbf = gamma_scale_sentinel;
  TruncationPolicy policy = TruncationPolicy::two_mode();
};

struct GramMatrix {
  enum class Provenance { exact, sampled };

  Eigen::MatrixXd entries;
  Provenance provenance = Provenance::exact;
  long shots = 0;          // sampled only
  std::uint64_t seed = 0;  // sampled only

  long rows() const { return entries.rows(); }
  long cols() const { return entries.cols(); }
};

// Single-mode Kerr kernel. With renormalized Poisson weights
// w_n = |f_n|^2 (f the truncated coherent amplitudes),
//   k(x, y) = |sum_n w_n e^{-i pi (x - y) n^2}|^2.
// Depends on x - y only, has period 2, and k(x, x) = 1 exactly.
double kernel_1mode(double x, double y, complexd alpha0,
                    const TruncationPolicy& policy = TruncationPolicy::one_mode());

// Two-mode Kerr kernel with coherent fiducial state:
//   k = |sum_{n,m} w_n w_m e^{i pi (n^2 dx1 + m^2 dx2 + 2 n m dx3)}|^2,
// dx = y - x componentwise, dx3 = y1 y2 - x1 x2. Equals the squared overlap
// of the encoded states at the same cutoff.
double kernel_2mode_coherent(const DataPoint& x, const DataPoint& y,
                             complexd alpha0,
                             const TruncationPolicy& policy = TruncationPolicy::two_mode());

// Squeezed-fiducial analog; weights from squeezed amplitudes. Renormalized
// so k(x, x) = 1; reduces to kernel_2mode_coherent as r0 -> 0.
double kernel_2mode_squeezed(const DataPoint& x, const DataPoint& y,
                             complexd alpha0, double r0,
                             const TruncationPolicy& policy = TruncationPolicy::two_mode());

// Generic fidelity kernel |<a|b>|^2 between states of identical shape.
double fidelity_kernel(const FockVector& a, const FockVector& b);

// RBF kernel e^{-gamma ||x - y||^2}; gamma must be resolved (> 0).
double rbf_kernel(const DataPoint& x, const DataPoint& y, double gamma);

// "scale" rule: gamma = 1 / (d * mean per-feature population variance).
// Throws domain_error when the dataset variance is degenerate (zero).
double resolve_gamma_scale(const std::vector<DataPoint>& points);

// Evaluates the kernel named by spec on a pair of points. For the Kerr kinds
// the closed forms above are used; fidelity_generic encodes both points at
// spec.policy and takes the squared overlap.
double kernel_eval(const KernelSpec& spec, const DataPoint& x,
                   const DataPoint& y);

// Exact Gram matrix K_ij = k(x_i, x_j): symmetric, unit diagonal, PSD up to
// roundoff. Parallelized over entries; result independent of thread count.
GramMatrix gram_exact(const std::vector<DataPoint>& points,
                      const KernelSpec& spec);

// Rectangular cross-Gram K_ij = k(test_i, train_j); columns follow the
// training-point order expected by the SVM predictor.
GramMatrix gram_cross(const std::vector<DataPoint>& test_points,
                      const std::vector<DataPoint>& train_points,
                      const KernelSpec& spec);

// Shot-noise Gram estimate: entry (i, j) is the success fraction of M
// Bernoulli trials with success probability k(x_i, x_j), drawn from a
// dedicated stream keyed by (seed, i, j) for i <= j and mirrored. The result
// is bit-identical for a given seed regardless of evaluation order.
GramMatrix gram_sampled(const std::vector<DataPoint>& points,
                        const KernelSpec& spec, long shots,
                        std::uint64_t seed);

// Average of the single-mode kernel over one period:
// (1/2) * Integral_0^2 k(y, x) dx by quadrature_n-point trapezoid.
double kernel_normalization_check(double y, const KernelSpec& spec,
                                  int quadrature_n);

}  // namespace kerrml
