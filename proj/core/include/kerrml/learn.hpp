#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kerrml/encode.hpp"
#include "kerrml/kernels.hpp"
#include "kerrml/measure.hpp"
#include "kerrml/svm.hpp"

namespace kerrml {

// How the sequential protocol estimates its update direction.
enum class GradientMode {
  empirical_fd,  // central differences of shot-sampled parity means
  analytic,      // mean-amplitude rule mu (1 - p) - b(x) with empirical p
  exact,         // exact Wirtinger gradient of the exact decision value
};

// State of the sequential protocol after one epoch: the displacement that
// was measured, the K-shot parity mean, and the resulting average error
// (1 - y * d) / 2.
struct EpochRecord {
  int epoch_index = 0;
  complexd mu{0.0, 0.0};
  double empirical_d = 0.0;
  double avg_error = 0.0;
  int shots = 0;
};

struct SequentialConfig {
  double x = 0.0;
  int true_y = +1;
  complexd alpha0{1.0, 0.0};
  complexd mu0{0.0, 0.0};
  int epochs = 100;
  int shots = 10000;           // K parity shots per epoch
  double step = 0.1;           // eta
  std::uint64_t seed = 0;
  GradientMode mode = GradientMode::empirical_fd;
  double probe_delta = 0.05;   // finite-difference probe radius
  TruncationPolicy policy = TruncationPolicy::one_mode();
};

// Runs the single-point gradient-feedback loop: per epoch, K parity shots at
// the current mu give the empirical decision mean and average error, then
// mu <- mu - eta * g with g the mode's estimate of the error gradient
// (complex convention: g = -y * dd/dmu*, so exact mode descends exactly).
// empirical_fd adds 4 probe epochs of K shots at mu ± delta, mu ± i delta.
// Aborts with numerical_error if |mu| exceeds sqrt(cutoff).
std::vector<EpochRecord> sequential_run(const SequentialConfig& config);

// Exact Wirtinger derivative dd/dmu* of the single-mode decision function at
// displacement mu: 2 mu d - 2 <phi| a D(2 mu) Pi |phi>.
complexd decision_gradient_1mode(complexd mu, double x, complexd alpha0,
                                 const TruncationPolicy& policy = TruncationPolicy::one_mode());

struct LabeledPoint {
  DataPoint x;
  int label = +1;
};

// Binary classification metrics with +1 as the positive class.
// confusion is [[TN, FP], [FN, TP]].
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::array<std::array<long, 2>, 2> confusion{{{0, 0}, {0, 0}}};
};

Metrics evaluate(const std::vector<int>& predictions,
                 const std::vector<int>& truth);

// Seeded shuffle split: first train_fraction of the permuted indices train,
// the rest test.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
SplitIndices split_dataset(std::size_t n, double train_fraction,
                           std::uint64_t seed);

// One full train/evaluate pass over a labeled dataset. train_points holds
// the training split in model index order (support_indices index into it),
// which downstream prediction on new points needs.
struct TrainOutcome {
  SvmModel model;
  SmoResult smo;
  Metrics metrics;
  std::vector<DataPoint> train_points;
  double resolved_gamma = 0.0;  // RBF only
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

struct TrainOptions {
  double C = 1.0;
  double tol = 1e-3;
  int max_passes = 200;
  double train_fraction = 0.7;
  std::uint64_t split_seed = 0;
};

// Trains on the seeded split with the given kernel and scores the held-out
// points. Throws domain_error if the training split is single-class.
TrainOutcome train_eval(const std::vector<LabeledPoint>& dataset,
                        const KernelSpec& kernel, const TrainOptions& options);

// RBF baseline with the same pipeline; gamma_rbf may be the scale sentinel.
TrainOutcome rbf_baseline_run(const std::vector<LabeledPoint>& dataset,
                              double C, double gamma_rbf,
                              const TrainOptions& options);

// Exhaustive (C, gamma) search for the RBF baseline on a fixed split.
// Ties broken toward smaller C, then smaller gamma.
struct GridSearchResult {
  double C = 0.0;
  double gamma = 0.0;
  Metrics metrics;
};
GridSearchResult grid_search(const std::vector<LabeledPoint>& dataset,
                             const std::vector<double>& C_grid,
                             const std::vector<double>& gamma_grid,
                             const TrainOptions& options);

}  // namespace kerrml
