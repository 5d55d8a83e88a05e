#include "kerrml/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kerrml/errors.hpp"
#include "kerrml/rng.hpp"

namespace kerrml {

namespace {

// Decision mean at mu: exact value, or K-shot empirical estimate.
double measured_decision(complexd mu, const SequentialConfig& config,
                         Rng& stream, bool exact) {
  const double d = decision_1mode(mu, config.x, config.alpha0, config.policy);
  if (exact) return d;
  return sample_parity(d, config.shots, stream).empirical_mean;
}

std::vector<DataPoint> collect_points(const std::vector<LabeledPoint>& dataset,
                                      const std::vector<std::size_t>& idx) {
  std::vector<DataPoint> points;
  points.reserve(idx.size());
  for (std::size_t i : idx) points.push_back(dataset[i].x);
  return points;
}

std::vector<int> collect_labels(const std::vector<LabeledPoint>& dataset,
                                const std::vector<std::size_t>& idx) {
  std::vector<int> labels;
  labels.reserve(idx.size());
  for (std::size_t i : idx) labels.push_back(dataset[i].label);
  return labels;
}

TrainOutcome train_eval_impl(const std::vector<LabeledPoint>& dataset,
                             const KernelSpec& kernel,
                             const TrainOptions& options) {
  if (dataset.size() < 2) {
    throw domain_error("train_eval: need at least 2 points");
  }
  const SplitIndices split =
      split_dataset(dataset.size(), options.train_fraction, options.split_seed);
  const std::vector<DataPoint> train_points = collect_points(dataset, split.train);
  const std::vector<DataPoint> test_points = collect_points(dataset, split.test);
  const std::vector<int> train_labels = collect_labels(dataset, split.train);
  const std::vector<int> test_labels = collect_labels(dataset, split.test);

  const bool has_pos = std::count(train_labels.begin(), train_labels.end(), +1) > 0;
  const bool has_neg = std::count(train_labels.begin(), train_labels.end(), -1) > 0;
  if (!has_pos || !has_neg) {
    throw domain_error("train_eval: training split contains a single class");
  }

  TrainOutcome outcome;
  outcome.n_train = train_points.size();
  outcome.n_test = test_points.size();

  KernelSpec resolved = kernel;
  if (kernel.kind == KernelKind::rbf &&
      kernel.gamma_rbf == gamma_scale_sentinel) {
    resolved.gamma_rbf = resolve_gamma_scale(train_points);
  }
  outcome.resolved_gamma = resolved.gamma_rbf;

  const GramMatrix gram = gram_exact(train_points, resolved);
  outcome.smo = smo_train(gram, train_labels, options.C, options.tol,
                          options.max_passes);
  outcome.model = make_model(outcome.smo, train_labels, options.C);

  const GramMatrix cross = gram_cross(test_points, train_points, resolved);
  outcome.metrics = evaluate(svm_predict(outcome.model, cross), test_labels);
  outcome.train_points = train_points;
  return outcome;
}

}  // namespace

complexd decision_gradient_1mode(complexd mu, double x, complexd alpha0,
                                 const TruncationPolicy& policy) {
  const FockVector phi = encode_one_mode(x, alpha0, policy);
  const Eigen::MatrixXcd disp2 =
      displacement_matrix(2.0 * mu, policy).entries;
  // w = D(2 mu) Pi phi; then d = <phi|w> and
  // dd/dmu* = 2 mu d - 2 <phi| a w>.
  Eigen::VectorXcd pw = phi.amps;
  for (int n = 1; n < pw.size(); n += 2) pw[n] = -pw[n];
  const Eigen::VectorXcd w = disp2 * pw;
  const complexd d = phi.amps.dot(w);
  complexd lowered{0.0, 0.0};
  for (int n = 0; n + 1 < w.size(); ++n) {
    lowered += std::conj(phi.amps[n]) * std::sqrt(double(n + 1)) * w[n + 1];
  }
  return 2.0 * mu * d - 2.0 * lowered;
}

std::vector<EpochRecord> sequential_run(const SequentialConfig& config) {
  if (config.epochs < 1) throw domain_error("sequential_run: epochs must be >= 1");
  if (config.shots < 1) throw domain_error("sequential_run: shots must be >= 1");
  if (!(config.step > 0.0)) throw domain_error("sequential_run: step must be positive");
  if (config.true_y != +1 && config.true_y != -1) {
    throw domain_error("sequential_run: label must be -1 or +1");
  }
  if (config.mode == GradientMode::empirical_fd && !(config.probe_delta > 0.0)) {
    throw domain_error("sequential_run: probe_delta must be positive");
  }

  const Rng root(config.seed);
  const double y = double(config.true_y);
  const double guard = std::sqrt(double(config.policy.cutoff));
  const bool exact = config.mode == GradientMode::exact;

  complexd mu = config.mu0;
  std::vector<EpochRecord> trace;
  trace.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (std::abs(mu) > guard) {
      throw numerical_error(
          "sequential_run: |mu| = " + std::to_string(std::abs(mu)) +
          " exceeded sqrt(cutoff) after epoch " + std::to_string(epoch) +
          "; step size likely too large");
    }
    Rng epoch_stream = root.stream(static_cast<std::uint64_t>(epoch));
    // Sub-streams: 0 measurement, 1..4 finite-difference probes.
    Rng measure_stream = epoch_stream.stream(0);
    const double d_bar = measured_decision(mu, config, measure_stream, exact);

    EpochRecord record;
    record.epoch_index = epoch;
    record.mu = mu;
    record.empirical_d = d_bar;
    record.avg_error = 0.5 * (1.0 - y * d_bar);
    record.shots = exact ? 0 : config.shots;
    trace.push_back(record);

    // Error gradient g = -y dd/dmu* in the convention where the real-pair
    // steepest-descent step is mu <- mu - eta g.
    complexd g{0.0, 0.0};
    switch (config.mode) {
      case GradientMode::exact: {
        g = -y * decision_gradient_1mode(mu, config.x, config.alpha0,
                                         config.policy);
        break;
      }
      case GradientMode::analytic: {
        // Mean-amplitude rule with the empirical "+1" probability.
        const double p_hat = 0.5 * (1.0 + d_bar);
        g = -2.0 * y * (mu * (1.0 - p_hat) - bias(config.x, config.alpha0));
        break;
      }
      case GradientMode::empirical_fd: {
        const double delta = config.probe_delta;
        Rng s1 = epoch_stream.stream(1), s2 = epoch_stream.stream(2);
        Rng s3 = epoch_stream.stream(3), s4 = epoch_stream.stream(4);
        const double d_re_plus =
            measured_decision(mu + delta, config, s1, exact);
        const double d_re_minus =
            measured_decision(mu - delta, config, s2, exact);
        const double d_im_plus =
            measured_decision(mu + complexd{0.0, delta}, config, s3, exact);
        const double d_im_minus =
            measured_decision(mu - complexd{0.0, delta}, config, s4, exact);
        const double du = (d_re_plus - d_re_minus) / (2.0 * delta);
        const double dv = (d_im_plus - d_im_minus) / (2.0 * delta);
        // dd/dmu* = (du + i dv) / 2.
        g = -y * 0.5 * complexd{du, dv};
        break;
      }
    }
    mu -= config.step * g;
  }
  return trace;
}

Metrics evaluate(const std::vector<int>& predictions,
                 const std::vector<int>& truth) {
  if (predictions.empty() || predictions.size() != truth.size()) {
    throw domain_error("evaluate: prediction/truth lengths must match and be nonempty");
  }
  long tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const int p = predictions[i], t = truth[i];
    if (p != -1 && p != +1) throw domain_error("evaluate: invalid prediction");
    if (t != -1 && t != +1) throw domain_error("evaluate: invalid truth label");
    if (p == +1 && t == +1) ++tp;
    else if (p == +1 && t == -1) ++fp;
    else if (p == -1 && t == +1) ++fn;
    else ++tn;
  }
  Metrics m;
  m.confusion = {{{tn, fp}, {fn, tp}}};
  const double total = double(tp + fp + fn + tn);
  m.accuracy = double(tp + tn) / total;
  m.precision = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

SplitIndices split_dataset(std::size_t n, double train_fraction,
                           std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw domain_error("split_dataset: train_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates with the project RNG: platform-independent shuffle.
  Rng rng = Rng(seed).stream(0x5917u);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform() * double(i));
    std::swap(order[i - 1], order[std::min(j, i - 1)]);
  }
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * double(n)));
  SplitIndices split;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.test.assign(order.begin() + n_train, order.end());
  return split;
}

TrainOutcome train_eval(const std::vector<LabeledPoint>& dataset,
                        const KernelSpec& kernel, const TrainOptions& options) {
  return train_eval_impl(dataset, kernel, options);
}

TrainOutcome rbf_baseline_run(const std::vector<LabeledPoint>& dataset,
                              double C, double gamma_rbf,
                              const TrainOptions& options) {
  KernelSpec spec;
  spec.kind = KernelKind::rbf;
  spec.gamma_rbf = gamma_rbf;
  TrainOptions opts = options;
  opts.C = C;
  return train_eval_impl(dataset, spec, opts);
}

GridSearchResult grid_search(const std::vector<LabeledPoint>& dataset,
                             const std::vector<double>& C_grid,
                             const std::vector<double>& gamma_grid,
                             const TrainOptions& options) {
  if (C_grid.empty() || gamma_grid.empty()) {
    throw domain_error("grid_search: grids must be nonempty");
  }
  std::vector<double> cs = C_grid;
  std::vector<double> gammas = gamma_grid;
  std::sort(cs.begin(), cs.end());
  std::sort(gammas.begin(), gammas.end());
  GridSearchResult best;
  bool first = true;
  for (double C : cs) {
    for (double gamma : gammas) {
      const TrainOutcome outcome = rbf_baseline_run(dataset, C, gamma, options);
      // Strict improvement only: earlier (smaller C, then smaller gamma)
      // cells win ties.
      if (first || outcome.metrics.accuracy > best.metrics.accuracy) {
        best.C = C;
        best.gamma = gamma;
        best.metrics = outcome.metrics;
        first = false;
      }
    }
  }
  return best;
}

}  // namespace kerrml
