#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kerrml/kernels.hpp"

namespace kerrml {

// Raw output of the dual solver.
struct SmoResult {
  Eigen::VectorXd alpha;     // dual variables, 0 <= alpha_i <= C
  double bias = 0.0;         // b in d(x) = sum_j y_j a_j k(x, x_j) - b
  double dual_objective = 0.0;
  long iterations = 0;
  bool converged = false;    // stopping tolerance reached within budget
  bool regularized = false;  // Gram needed a lambda*I bump to pass PSD check
};

// Trained classifier restricted to its support vectors. dual_coeffs[s] holds
// y_j * alpha_j for training index support_indices[s].
struct SvmModel {
  std::vector<long> support_indices;
  std::vector<double> dual_coeffs;
  double bias = 0.0;
  double C = 1.0;
};

// Soft-margin dual SVM via sequential minimal optimization with
// maximal-violating-pair working-set selection:
//   minimize (1/2) a^T Q a - e^T a,  Q_ij = y_i y_j K_ij,
//   subject to 0 <= a_i <= C, y^T a = 0.
// Stops when the KKT violation gap falls below tol; the iteration budget is
// max_passes * n. A Gram failing the PSD probe (Cholesky of K + 1e-8 I) is
// regularized by adding 1e-8 to its diagonal, flagged in the result.
// Deterministic: no randomness in pair selection.
SmoResult smo_train(const GramMatrix& gram, const std::vector<int>& labels,
                    double C, double tol = 1e-3, int max_passes = 200);

// Extracts the support-vector model (alpha_i above `threshold`).
SvmModel make_model(const SmoResult& result, const std::vector<int>& labels,
                    double C, double threshold = 1e-12);

// Decision values d_i = sum_s coeffs_s * K_cross(i, support_s) - b.
// Cross-Gram columns must follow the training-point order.
std::vector<double> svm_decision_values(const SvmModel& model,
                                        const GramMatrix& gram_cross);

// Predicted labels: sign of the decision value, exact zeros resolved to +1.
std::vector<int> svm_predict(const SvmModel& model,
                             const GramMatrix& gram_cross);

}  // namespace kerrml
