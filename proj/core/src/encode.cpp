#include "kerrml/encode.hpp"

#include <cmath>
#include <string>

#include "kerrml/errors.hpp"

namespace kerrml {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_unit_interval(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw domain_error(std::string(who) + ": coordinate " + std::to_string(x) +
                       " outside [0, 1]");
  }
}

FockVector fiducial_amplitudes(complexd alpha0, double r0,
                               const TruncationPolicy& policy) {
  return r0 == 0.0 ? coherent_amplitudes(alpha0, policy)
                   : squeezed_amplitudes(alpha0, r0, policy);
}

}  // namespace

FockVector encode_one_mode(double x, complexd alpha0,
                           const TruncationPolicy& policy) {
  FockVector state = coherent_amplitudes(alpha0, policy);
  for (int n = 0; n <= policy.cutoff; ++n) {
    state.amps[n] *= std::exp(complexd{0.0, -kPi * x * double(n) * double(n)});
  }
  return state;
}

FockVector encode_two_mode(const DataPoint& x, complexd alpha0, double r0,
                           const TruncationPolicy& policy) {
  if (x.dim() != 2) {
    throw domain_error("encode_two_mode: expects a 2-coordinate point");
  }
  check_unit_interval(x.coords[0], "encode_two_mode");
  check_unit_interval(x.coords[1], "encode_two_mode");

  const FockVector f = fiducial_amplitudes(alpha0, r0, policy);
  const int dim = policy.cutoff + 1;
  const double x1 = x.coords[0];
  const double x2 = x.coords[1];
  const double x3 = x1 * x2;

  FockVector state;
  state.num_modes = 2;
  state.cutoff = policy.cutoff;
  state.amps.resize(dim * dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const double phase =
          kPi * (double(n) * n * x1 + double(m) * m * x2 + 2.0 * n * m * x3);
      state.amps[fock_index(n, m, policy.cutoff)] =
          f.amps[n] * f.amps[m] * std::exp(complexd{0.0, -phase});
    }
  }
  state.normalize();
  return state;
}

FockVector encode_p_mode(const std::vector<double>& x, complexd alpha0,
                         double r0, const TruncationPolicy& policy) {
  const int P = static_cast<int>(x.size());
  if (P < 1 || P > 3) {
    throw domain_error("encode_p_mode: supports 1 <= P <= 3 modes, got P = " +
                       std::to_string(P));
  }
  for (double xi : x) check_unit_interval(xi, "encode_p_mode");

  const FockVector f = fiducial_amplitudes(alpha0, r0, policy);
  const int dim = policy.cutoff + 1;

  // Feature map: self-Kerr weights x_k^2, then one cross-Kerr weight
  // (1 - x_a)(1 - x_b) per mode pair a < b; K = P(P+1)/2 features total.
  std::vector<double> self_phi(P);
  for (int k = 0; k < P; ++k) self_phi[k] = x[k] * x[k];
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> cross_phi;
  for (int a = 0; a < P; ++a) {
    for (int b = a + 1; b < P; ++b) {
      pairs.emplace_back(a, b);
      cross_phi.push_back((1.0 - x[a]) * (1.0 - x[b]));
    }
  }

  int total = 1;
  for (int k = 0; k < P; ++k) total *= dim;

  FockVector state;
  state.num_modes = P;
  state.cutoff = policy.cutoff;
  state.amps.resize(total);
  std::vector<int> n(P);
  for (int idx = 0; idx < total; ++idx) {
    // Lexicographic digits of idx: first mode most significant.
    int rest = idx;
    for (int k = P - 1; k >= 0; --k) {
      n[k] = rest % dim;
      rest /= dim;
    }
    double phase = 0.0;
    complexd coeff{1.0, 0.0};
    for (int k = 0; k < P; ++k) {
      phase += self_phi[k] * double(n[k]) * n[k];
      coeff *= f.amps[n[k]];
    }
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      phase += cross_phi[j] * 2.0 * n[pairs[j].first] * n[pairs[j].second];
    }
    state.amps[idx] = coeff * std::exp(complexd{0.0, -kPi * phase});
  }
  state.normalize();
  return state;
}

complexd bias(double x, complexd alpha0) {
  check_unit_interval(x, "bias");
  const complexd rot = std::exp(complexd{0.0, -2.0 * kPi * x});
  return alpha0 * std::exp(complexd{0.0, -kPi * x}) *
         std::exp(-std::norm(alpha0) * (complexd{1.0, 0.0} - rot));
}

DensityMatrix reduced_state_two_mode(const DataPoint& x, complexd alpha0,
                                     const TruncationPolicy& policy) {
  const FockVector joint = encode_two_mode(x, alpha0, 0.0, policy);
  const int dim = policy.cutoff + 1;
  DensityMatrix rho;
  rho.cutoff = policy.cutoff;
  rho.entries.setZero(dim, dim);
  // rho^(1)_{n n'} = sum_m Phi_{n m} conj(Phi_{n' m}).
  for (int n = 0; n < dim; ++n) {
    for (int np = 0; np < dim; ++np) {
      complexd acc{0.0, 0.0};
      for (int m = 0; m < dim; ++m) {
        acc += joint.amps[fock_index(n, m, policy.cutoff)] *
               std::conj(joint.amps[fock_index(np, m, policy.cutoff)]);
      }
      rho.entries(n, np) = acc;
    }
  }
  return rho;
}

}  // namespace kerrml
