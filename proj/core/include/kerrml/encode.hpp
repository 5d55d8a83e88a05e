#pragma once

#include <vector>

#include "kerrml/fock.hpp"

namespace kerrml {

// A sample from the unit hypercube [0,1]^P. P = 1 or 2 in the experiments;
// the general encoding supports P <= 3.
struct DataPoint {
  std::vector<double> coords;

  DataPoint() = default;
  explicit DataPoint(double x1) : coords{x1} {}
  DataPoint(double x1, double x2) : coords{x1, x2} {}

  std::size_t dim() const { return coords.size(); }
};

// Kerr-encoded single-mode state: amps[n] = f_n e^{-i pi x n^2} with f the
// coherent amplitudes. Phases have period 2 in x.
FockVector encode_one_mode(double x, complexd alpha0,
                           const TruncationPolicy& policy);

// Kerr + cross-Kerr encoded two-mode state with the experimental phase
// convention: amps[n,m] = f_n f_m e^{-i pi (n^2 x1 + m^2 x2 + 2 n m x1 x2)}.
// f comes from coherent amplitudes at r0 = 0, squeezed amplitudes otherwise.
FockVector encode_two_mode(const DataPoint& x, complexd alpha0, double r0,
                           const TruncationPolicy& policy);

// General P-mode encoding (P <= 3) with feature map
//   phi_k     = x_k^2                    (self-Kerr, k = 1..P)
//   phi_{P+j} = (1 - x_a)(1 - x_b)       (cross-Kerr, one per mode pair a<b)
// and generators g_k(n) = n_k^2, g_{P+j}(n) = 2 n_a n_b, giving
// amps[n] = prod_j f_{n_j} * e^{-i pi phi(x) . g(n)}. This convention differs
// from encode_two_mode's at P = 2; the experiments use encode_two_mode.
FockVector encode_p_mode(const std::vector<double>& x, complexd alpha0,
                         double r0, const TruncationPolicy& policy);

// Mean amplitude <phi(x)|a|phi(x)> of the single-mode encoded state:
// b(x) = alpha0 e^{-i pi x} e^{-|alpha0|^2 (1 - e^{-2 pi i x})}.
// Traces the collapse-and-revival curve; |b(1/2)| = |alpha0| e^{-2|alpha0|^2}.
complexd bias(double x, complexd alpha0);

// Reduced state of the first mode of the two-mode encoded state (coherent
// fiducial): partial trace over the second mode. Unit trace; mixed whenever
// the cross-Kerr phase entangles the modes.
DensityMatrix reduced_state_two_mode(const DataPoint& x, complexd alpha0,
                                     const TruncationPolicy& policy);

}  // namespace kerrml
