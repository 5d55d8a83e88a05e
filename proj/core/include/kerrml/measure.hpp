#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kerrml/encode.hpp"
#include "kerrml/fock.hpp"
#include "kerrml/rng.hpp"

namespace kerrml {

// One (mu, nu) displacement setting; nu is unused for single-mode decisions.
// Named sets ship in data/munu_displacements.json.
struct DisplacementPair {
  complexd mu{0.0, 0.0};
  complexd nu{0.0, 0.0};
  std::string name;
};

// Result of K parity shots: outcomes in {-1, +1} and their mean.
struct ParitySampleResult {
  double empirical_mean = 0.0;
  std::vector<int> outcomes;
};

// Displaced-parity expectation on the single-mode encoded state:
//   d(mu, x) = sum_k (-1)^k |(D(-mu) phi(x))_k|^2,
// clamped to [-1, 1]. Equals (pi/2) times the Wigner function at mu.
double decision_1mode(complexd mu, double x, complexd alpha0,
                      const TruncationPolicy& policy = TruncationPolicy::one_mode());

// Same expectation without the final clamp; exposes the O(1e-9) truncation
// overshoot for boundedness tests.
double decision_1mode_raw(complexd mu, double x, complexd alpha0,
                          const TruncationPolicy& policy = TruncationPolicy::one_mode());

// Two-mode displaced-parity expectation at displacement (mu, nu):
//   d = sum_{n,m} (-1)^{n+m} |(D(-mu) ⊗ D(-nu) Phi(x))_{nm}|^2,
// clamped to [-1, 1]. Equals (pi^2/4) times the two-mode Wigner function.
double decision_2mode(const DisplacementPair& pair, const DataPoint& x,
                      complexd alpha0, double r0,
                      const TruncationPolicy& policy = TruncationPolicy::two_mode());

// Labelling rule: sign of decision_2mode with exact zeros resolved to +1.
int label_point(const DataPoint& x, const DisplacementPair& pair,
                complexd alpha0, double r0,
                const TruncationPolicy& policy = TruncationPolicy::two_mode());

// Precomputes the displacement matrices and fiducial amplitudes of one
// (pair, alpha0, r0, policy) setting so large point sets can be labelled
// cheaply. Thread-safe after construction.
class Labeller {
 public:
  Labeller(const DisplacementPair& pair, complexd alpha0, double r0,
           const TruncationPolicy& policy);

  double decision(const DataPoint& x) const;
  int label(const DataPoint& x) const { return decision(x) >= 0.0 ? +1 : -1; }

 private:
  Eigen::MatrixXcd disp_mu_;  // D(-mu)
  Eigen::MatrixXcd disp_nu_;  // D(-nu)
  Eigen::VectorXcd fiducial_;
  int cutoff_;
};

// Labels every point against one displacement pair; parallel over points,
// output independent of thread count.
std::vector<int> label_dataset(const std::vector<DataPoint>& points,
                               const DisplacementPair& pair, complexd alpha0,
                               double r0,
                               const TruncationPolicy& policy = TruncationPolicy::two_mode());

// K shots of the two-outcome parity POVM with P(+1) = (1 + d)/2.
// Requires |d| <= 1 + 1e-9 (the slack absorbs truncation overshoot).
ParitySampleResult sample_parity(double d, int shots, Rng& rng);

// Draws displacement pairs with all four real components i.i.d. Gaussian,
// mean 0, variance sigma; each of mu, nu rejection-resampled until
// |mu|^2 < max_abs2 and |nu|^2 < max_abs2.
std::vector<DisplacementPair> sample_displacements(double sigma, int count,
                                                   double max_abs2,
                                                   std::uint64_t seed);

// Ground-truth single-mode label sign(cos(pi x)): +1 for x < 1/2, -1 for
// x > 1/2, the boundary x = 1/2 resolved to +1.
int true_label_1mode(double x);

// True when |mu| is small enough that the truncated decision sums remain
// faithful; callers warn when violated.
bool displacement_within_guard(complexd mu, const TruncationPolicy& policy);

}  // namespace kerrml
