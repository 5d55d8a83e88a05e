#include "kerrml/svm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kerrml/errors.hpp"

namespace kerrml {

namespace {

constexpr double kCurvatureFloor = 1e-12;  // guard for non-PSD pair curvature

void check_labels(const std::vector<int>& labels) {
  for (int y : labels) {
    if (y != -1 && y != +1) {
      throw domain_error("smo_train: labels must be -1 or +1");
    }
  }
}

}  // namespace

SmoResult smo_train(const GramMatrix& gram, const std::vector<int>& labels,
                    double C, double tol, int max_passes) {
  const long n = gram.rows();
  if (n == 0 || gram.cols() != n) {
    throw domain_error("smo_train: Gram matrix must be square and nonempty");
  }
  if (static_cast<long>(labels.size()) != n) {
    throw domain_error("smo_train: label count does not match Gram size");
  }
  check_labels(labels);
  if (!(C > 0.0)) throw domain_error("smo_train: C must be positive");
  if (!(tol > 0.0)) throw domain_error("smo_train: tol must be positive");
  if (max_passes < 1) throw domain_error("smo_train: max_passes must be >= 1");

  SmoResult result;

  // PSD probe: Cholesky of K + 1e-8 I. Failure means eigenvalues below
  // -1e-8; bump the diagonal and record it.
  Eigen::MatrixXd kernel = gram.entries;
  {
    Eigen::LLT<Eigen::MatrixXd> llt(
        kernel + 1e-8 * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() != Eigen::Success) {
      kernel.diagonal().array() += 1e-8;
      result.regularized = true;
    }
  }

  Eigen::VectorXd y(n);
  for (long i = 0; i < n; ++i) y[i] = double(labels[i]);
  const Eigen::MatrixXd Q = (y * y.transpose()).cwiseProduct(kernel);

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);  // Q a - e at a=0

  const long max_iterations = static_cast<long>(max_passes) * n;
  double gap_m = 0.0, gap_M = 0.0;
  for (result.iterations = 0; result.iterations < max_iterations;
       ++result.iterations) {
    // Maximal violating pair over
    //   I_up  = {i : a_i < C, y_i = +1} u {i : a_i > 0, y_i = -1}
    //   I_low = {i : a_i < C, y_i = -1} u {i : a_i > 0, y_i = +1}
    long i_up = -1, i_low = -1;
    gap_m = -std::numeric_limits<double>::infinity();
    gap_M = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
      const double score = -y[i] * grad[i];
      const bool in_up = (y[i] > 0 && alpha[i] < C) || (y[i] < 0 && alpha[i] > 0);
      const bool in_low = (y[i] < 0 && alpha[i] < C) || (y[i] > 0 && alpha[i] > 0);
      if (in_up && score > gap_m) {
        gap_m = score;
        i_up = i;
      }
      if (in_low && score < gap_M) {
        gap_M = score;
        i_low = i;
      }
    }
    if (i_up < 0 || i_low < 0 || gap_m - gap_M <= tol) {
      result.converged = true;
      break;
    }

    const long i = i_up, j = i_low;
    // One-dimensional step along (da_i, da_j) = (y_i, -y_j) * d.
    double curvature = Q(i, i) + Q(j, j) - 2.0 * y[i] * y[j] * Q(i, j);
    if (curvature <= kCurvatureFloor) curvature = kCurvatureFloor;
    double step = (gap_m - gap_M) / curvature;

    // Box limits keep both coordinates in [0, C].
    const double limit_i = y[i] > 0 ? C - alpha[i] : alpha[i];
    const double limit_j = y[j] > 0 ? alpha[j] : C - alpha[j];
    step = std::min(step, std::min(limit_i, limit_j));

    const double delta_i = y[i] * step;
    const double delta_j = -y[j] * step;
    alpha[i] += delta_i;
    alpha[j] += delta_j;
    grad.noalias() += Q.col(i) * delta_i + Q.col(j) * delta_j;
  }

  // b = -(m + M)/2 places margin support vectors at |decision| = 1.
  // Degenerate single-class problems leave one selection set empty; fall
  // back to the available side so predictions stay on that class.
  const bool have_m = std::isfinite(gap_m);
  const bool have_M = std::isfinite(gap_M);
  if (have_m && have_M) {
    result.bias = -(gap_m + gap_M) / 2.0;
  } else if (have_m) {
    result.bias = -gap_m;
  } else if (have_M) {
    result.bias = -gap_M;
  } else {
    result.bias = 0.0;
  }
  result.alpha = alpha;
  // Dual objective e^T a - (1/2) a^T Q a, using a^T Q a = a^T (grad + e).
  result.dual_objective = alpha.sum() - 0.5 * alpha.dot(grad + Eigen::VectorXd::Ones(n));
  return result;
}

SvmModel make_model(const SmoResult& result, const std::vector<int>& labels,
                    double C, double threshold) {
  if (static_cast<long>(labels.size()) != result.alpha.size()) {
    throw domain_error("make_model: label count does not match solution size");
  }
  SvmModel model;
  model.bias = result.bias;
  model.C = C;
  for (long i = 0; i < result.alpha.size(); ++i) {
    if (result.alpha[i] > threshold) {
      model.support_indices.push_back(i);
      model.dual_coeffs.push_back(double(labels[i]) * result.alpha[i]);
    }
  }
  return model;
}

std::vector<double> svm_decision_values(const SvmModel& model,
                                        const GramMatrix& gram_cross) {
  const long rows = gram_cross.rows();
  for (long s : model.support_indices) {
    if (s >= gram_cross.cols()) {
      throw domain_error(
          "svm_decision_values: cross-Gram has fewer columns than training "
          "points");
    }
  }
  std::vector<double> values(static_cast<std::size_t>(rows));
  for (long i = 0; i < rows; ++i) {
    double d = -model.bias;
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
      d += model.dual_coeffs[s] * gram_cross.entries(i, model.support_indices[s]);
    }
    values[static_cast<std::size_t>(i)] = d;
  }
  return values;
}

std::vector<int> svm_predict(const SvmModel& model,
                             const GramMatrix& gram_cross) {
  const std::vector<double> values = svm_decision_values(model, gram_cross);
  std::vector<int> labels(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    labels[i] = values[i] >= 0.0 ? +1 : -1;
  }
  return labels;
}

}  // namespace kerrml
