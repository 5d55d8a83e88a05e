#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "kerrml/encode.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/io.hpp"
#include "kerrml/learn.hpp"
#include "kerrml/loss.hpp"
#include "kerrml/measure.hpp"
#include "kerrml/rng.hpp"
#include "kerrml/stats.hpp"

namespace kerrml::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "kerr-coherent-1mode") return KernelKind::kerr_coherent_1mode;
  if (name == "kerr-coherent-2mode") return KernelKind::kerr_coherent_2mode;
  if (name == "kerr-squeezed-2mode") return KernelKind::kerr_squeezed_2mode;
  if (name == "fidelity") return KernelKind::fidelity_generic;
  if (name == "rbf") return KernelKind::rbf;
  throw domain_error("unknown kernel kind '" + name + "'");
}

// Policies built from a CLI-selected cutoff use a 1e-7 tail bound: the
// standard configuration (cutoff 10 at unit amplitude) discards 1.005e-8 of
// probability mass, which the tighter library default would reject.
TruncationPolicy cli_policy(const ExperimentConfig& config) {
  return TruncationPolicy{config.cutoff, 1e-7};
}

KernelSpec kernel_spec_from(const ExperimentConfig& config) {
  KernelSpec spec;
  spec.kind = parse_kernel_kind(config.kernel);
  spec.alpha0 = complexd{config.alpha0, 0.0};
  spec.r0 = config.r0;
  spec.gamma_rbf = config.gamma;
  spec.policy = cli_policy(config);
  return spec;
}

DisplacementPair find_displacement_set(const ExperimentConfig& config) {
  if (config.displacements_path.empty()) {
    throw domain_error("--displacements file is required");
  }
  const auto pairs = read_displacements_json(config.displacements_path);
  if (config.set_name.empty()) {
    if (pairs.size() == 1) return pairs.front();
    throw domain_error("--set is required when the file holds several sets");
  }
  for (const auto& pair : pairs) {
    if (pair.name == config.set_name) return pair;
  }
  throw domain_error("displacement set '" + config.set_name + "' not found in " +
                     config.displacements_path);
}

std::vector<LabeledPoint> load_dataset(const ExperimentConfig& config) {
  if (config.data_path.empty()) throw domain_error("--data file is required");
  return read_labeled_csv(config.data_path);
}

// Deterministic subsample: first `size` entries of a seeded shuffle.
std::vector<LabeledPoint> subsample(std::vector<LabeledPoint> rows, long size,
                                    std::uint64_t seed) {
  if (size <= 0 || static_cast<std::size_t>(size) >= rows.size()) return rows;
  Rng rng = Rng(seed).stream(0xDA7A);
  for (std::size_t i = rows.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * double(i));
    std::swap(rows[i - 1], rows[std::min(j, i - 1)]);
  }
  rows.resize(static_cast<std::size_t>(size));
  return rows;
}

nlohmann::json stats_to_json(const SummaryStats& s) {
  return nlohmann::json{
      {"count", s.count},   {"mean", s.mean},     {"std", s.stddev},
      {"min", s.min},       {"q25", s.q25},       {"median", s.median},
      {"q75", s.q75},       {"max", s.max},       {"skew", s.skewness},
      {"kurtosis", s.kurtosis},
  };
}

nlohmann::json metrics_to_json(const Metrics& m) {
  return nlohmann::json{
      {"accuracy", m.accuracy},
      {"precision", m.precision},
      {"recall", m.recall},
      {"f1", m.f1},
      {"confusion",
       {{m.confusion[0][0], m.confusion[0][1]},
        {m.confusion[1][0], m.confusion[1][1]}}},
  };
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw domain_error("cannot open for writing: " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw domain_error("write failed: " + path);
}

TruncationPolicy one_mode_policy(const ExperimentConfig& config,
                                 bool cutoff_given) {
  return cutoff_given ? cli_policy(config) : TruncationPolicy::one_mode();
}

}  // namespace

void cmd_gen_data(const ExperimentConfig& config, long n,
                  const std::string& out_path) {
  if (n < 1) throw domain_error("gen-data: --n must be >= 1");
  const std::uint64_t seed = require_seed(config);
  Rng rng = Rng(seed).stream(0x6E0);
  std::vector<DataPoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double x1 = rng.uniform();
    const double x2 = rng.uniform();
    points.emplace_back(x1, x2);
  }
  write_points_csv(out_path, points);

  std::vector<double> col1, col2;
  col1.reserve(points.size());
  col2.reserve(points.size());
  for (const auto& p : points) {
    col1.push_back(p.coords[0]);
    col2.push_back(p.coords[1]);
  }
  const nlohmann::json summary{{"count", n},
                               {"x1", stats_to_json(summarize(col1))},
                               {"x2", stats_to_json(summarize(col2))}};
  std::cout << summary.dump(2) << "\n";
}

void cmd_sample_displacements(const ExperimentConfig& config, double sigma,
                              int count, double max_abs2,
                              const std::string& out_path) {
  const std::uint64_t seed = require_seed(config);
  auto pairs = sample_displacements(sigma, count, max_abs2, seed);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i].name = "pair" + std::to_string(i);
  }
  write_displacements_json(out_path, pairs);
}

void cmd_label(const ExperimentConfig& config, const std::string& out_path,
               const std::string& summary_path) {
  if (config.data_path.empty()) throw domain_error("--data file is required");
  const std::vector<DataPoint> points = read_points_csv(config.data_path);
  const DisplacementPair pair = find_displacement_set(config);
  const TruncationPolicy policy = cli_policy(config);

  const double nbar =
      config.alpha0 * config.alpha0 + std::sinh(config.r0) * std::sinh(config.r0);
  if (double(config.cutoff) < nbar) {
    std::cerr << "warning: cutoff " << config.cutoff
              << " is below the fiducial mean photon number " << nbar << "\n";
  }
  for (const complexd mu : {pair.mu, pair.nu}) {
    if (!displacement_within_guard(mu, policy)) {
      std::cerr << "warning: displacement magnitude " << std::abs(mu)
                << " exceeds sqrt(cutoff)/2; truncated sums may be inaccurate\n";
    }
  }

  const std::vector<int> labels =
      label_dataset(points, pair, complexd{config.alpha0, 0.0}, config.r0, policy);
  std::vector<LabeledPoint> rows(points.size());
  long n_plus = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows[i] = LabeledPoint{points[i], labels[i]};
    if (labels[i] > 0) ++n_plus;
  }
  write_labeled_csv(out_path, rows);

  const long n = static_cast<long>(rows.size());
  const nlohmann::json summary{
      {"set_name", pair.name},
      {"count", n},
      {"plus", n_plus},
      {"minus", n - n_plus},
      {"plus_proportion", double(n_plus) / double(n)},
      {"minus_proportion", double(n - n_plus) / double(n)},
  };
  std::cout << summary.dump(2) << "\n";
  if (!summary_path.empty()) write_json_file(summary_path, summary);
}

void cmd_train(const ExperimentConfig& config, const std::string& out_path,
               const std::string& boundary_path) {
  const std::uint64_t seed = require_seed(config);
  std::vector<LabeledPoint> dataset =
      subsample(load_dataset(config), config.sample_size, seed);

  const KernelSpec spec = kernel_spec_from(config);
  TrainOptions options;
  options.C = config.C;
  options.tol = config.tol;
  options.max_passes = config.max_passes;
  options.train_fraction = config.split;
  options.split_seed = seed;

  const TrainOutcome outcome = train_eval(dataset, spec, options);
  if (!outcome.smo.converged) {
    std::cerr << "warning: solver hit the iteration budget before reaching "
                 "its tolerance\n";
  }
  if (outcome.smo.regularized) {
    std::cerr << "warning: Gram matrix failed the PSD probe and was "
                 "regularized\n";
  }

  ExperimentConfig resolved = config;
  resolved.sample_size = static_cast<long>(dataset.size());
  if (spec.kind == KernelKind::rbf) resolved.gamma = outcome.resolved_gamma;

  nlohmann::json report = metrics_to_json(outcome.metrics);
  report["set_name"] = config.set_name;
  report["set_size"] = dataset.size();
  report["C"] = config.C;
  report["gamma"] = resolved.gamma;
  report["n_support"] = outcome.model.support_indices.size();
  report["seed"] = seed;
  report["kernel_kind"] = config.kernel;
  report["cutoff"] = config.cutoff;
  report["alpha0"] = config.alpha0;
  report["r0"] = config.r0;
  report["config"] = to_json(resolved);

  nlohmann::json support = nlohmann::json::array();
  for (std::size_t s = 0; s < outcome.model.support_indices.size(); ++s) {
    const DataPoint& p =
        outcome.train_points[static_cast<std::size_t>(outcome.model.support_indices[s])];
    support.push_back({p.coords[0], p.coords[1], outcome.model.dual_coeffs[s]});
  }
  report["model"] = nlohmann::json{{"bias", outcome.model.bias},
                                   {"C", config.C},
                                   {"support", std::move(support)}};
  write_json_file(out_path, report);
  std::cout << metrics_to_json(outcome.metrics).dump(2) << "\n";

  if (!boundary_path.empty()) {
    // Predicted labels on the h = 0.02 mesh over the unit square.
    constexpr double h = 0.02;
    constexpr int steps = 51;
    std::vector<DataPoint> mesh;
    mesh.reserve(steps * steps);
    for (int i = 0; i < steps; ++i) {
      for (int j = 0; j < steps; ++j) {
        mesh.emplace_back(std::min(1.0, i * h), std::min(1.0, j * h));
      }
    }
    const GramMatrix cross = gram_cross(mesh, outcome.train_points, spec);
    const std::vector<int> labels = svm_predict(outcome.model, cross);
    std::vector<LabeledPoint> rows(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      rows[i] = LabeledPoint{mesh[i], labels[i]};
    }
    write_labeled_csv(boundary_path, rows);
  }
}

void cmd_predict(const ExperimentConfig& config, const std::string& model_path,
                 const std::string& out_path) {
  std::ifstream in(model_path);
  if (!in) throw domain_error("cannot open model file: " + model_path);
  nlohmann::json report;
  try {
    in >> report;
  } catch (const nlohmann::json::exception& e) {
    throw domain_error("malformed model JSON " + model_path + ": " + e.what());
  }
  if (!report.contains("model")) {
    throw domain_error("no 'model' object in " + model_path +
                       " (expected a train report)");
  }

  ExperimentConfig model_config = config;
  model_config.kernel = report.at("kernel_kind").get<std::string>();
  model_config.alpha0 = report.at("alpha0").get<double>();
  model_config.r0 = report.at("r0").get<double>();
  model_config.cutoff = report.at("cutoff").get<int>();
  model_config.gamma = report.at("gamma").get<double>();
  const KernelSpec spec = kernel_spec_from(model_config);

  const nlohmann::json& model_doc = report.at("model");
  SvmModel model;
  model.bias = model_doc.at("bias").get<double>();
  model.C = model_doc.at("C").get<double>();
  std::vector<DataPoint> support_points;
  for (const auto& entry : model_doc.at("support")) {
    support_points.emplace_back(entry.at(0).get<double>(),
                                entry.at(1).get<double>());
    model.support_indices.push_back(static_cast<long>(model.dual_coeffs.size()));
    model.dual_coeffs.push_back(entry.at(2).get<double>());
  }
  if (support_points.empty()) {
    throw domain_error("model has no support vectors: " + model_path);
  }

  if (config.data_path.empty()) throw domain_error("--data file is required");
  // Accept either labeled or unlabeled CSV; compute metrics when labeled.
  std::vector<DataPoint> points;
  std::vector<int> truth;
  try {
    const auto labeled = read_labeled_csv(config.data_path);
    for (const auto& row : labeled) {
      points.push_back(row.x);
      truth.push_back(row.label);
    }
  } catch (const domain_error&) {
    points = read_points_csv(config.data_path);
  }

  const GramMatrix cross = gram_cross(points, support_points, spec);
  const std::vector<int> predicted = svm_predict(model, cross);
  std::vector<LabeledPoint> rows(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows[i] = LabeledPoint{points[i], predicted[i]};
  }
  write_labeled_csv(out_path, rows);
  if (!truth.empty()) {
    std::cout << metrics_to_json(evaluate(predicted, truth)).dump(2) << "\n";
  }
}

void cmd_wigner(const ExperimentConfig& config, const WignerArgs& args,
                const std::string& out_path) {
  if (args.grid_n < 2) throw domain_error("wigner: --grid-n must be >= 2");
  const complexd alpha0{config.alpha0, 0.0};
  const TruncationPolicy policy =
      args.two_mode ? cli_policy(config)
                    : one_mode_policy(config, args.cutoff_given);

  std::ofstream out(out_path);
  if (!out) throw domain_error("cannot open for writing: " + out_path);
  out << "re,im,d\n";
  const double d_re = (args.re_max - args.re_min) / double(args.grid_n - 1);
  const double d_im = (args.im_max - args.im_min) / double(args.grid_n - 1);
  for (int i = 0; i < args.grid_n; ++i) {
    for (int j = 0; j < args.grid_n; ++j) {
      const complexd point{args.re_min + d_re * i, args.im_min + d_im * j};
      double d = 0.0;
      if (args.two_mode) {
        DisplacementPair pair;
        pair.mu = point;
        pair.nu = complexd{args.nu_re, args.nu_im};
        d = decision_2mode(pair, DataPoint(args.x1, args.x2), alpha0,
                           config.r0, policy);
      } else if (config.gamma_loss > 0.0) {
        const LossParams params{kPi * args.x1, config.gamma_loss, config.t};
        d = damped_decision(point, params, alpha0, policy);
      } else {
        d = decision_1mode(point, args.x1, alpha0, policy);
      }
      out << format_double(point.real()) << "," << format_double(point.imag())
          << "," << format_double(d) << "\n";
    }
  }
  if (!out) throw domain_error("write failed: " + out_path);
}

void cmd_sequential(const ExperimentConfig& config, const SequentialArgs& args,
                    const std::string& out_path) {
  SequentialConfig run;
  run.x = args.x;
  run.true_y = args.label;
  run.alpha0 = complexd{config.alpha0, 0.0};
  run.mu0 = complexd{args.mu0_re, args.mu0_im};
  run.epochs = args.epochs;
  run.shots = static_cast<int>(config.shots > 0 ? config.shots : 10000);
  run.step = args.eta;
  run.probe_delta = args.probe_delta;
  run.policy = one_mode_policy(config, args.cutoff_given);
  if (args.gradient == "empirical-fd") {
    run.mode = GradientMode::empirical_fd;
  } else if (args.gradient == "analytic") {
    run.mode = GradientMode::analytic;
  } else if (args.gradient == "exact") {
    run.mode = GradientMode::exact;
  } else {
    throw domain_error("unknown gradient mode '" + args.gradient + "'");
  }
  // Exact mode consumes no randomness; only sampled runs need a seed.
  run.seed = run.mode == GradientMode::exact ? config.seed.value_or(0)
                                             : require_seed(config);
  write_trace_csv(out_path, sequential_run(run));
}

void cmd_kernel(const ExperimentConfig& config, const std::string& mode,
                const std::string& out_path) {
  if (config.data_path.empty()) throw domain_error("--data file is required");
  const std::vector<DataPoint> points = read_points_csv(config.data_path);
  const KernelSpec spec = kernel_spec_from(config);
  GramMatrix gram;
  if (mode == "exact") {
    gram = gram_exact(points, spec);
  } else if (mode == "sampled") {
    if (config.shots < 1) {
      throw domain_error("kernel --mode sampled requires --shots >= 1");
    }
    gram = gram_sampled(points, spec, config.shots, require_seed(config));
  } else {
    throw domain_error("kernel --mode must be 'exact' or 'sampled'");
  }
  write_gram_csv(out_path, gram);
}

void cmd_loss_sweep(const ExperimentConfig& config, const LossSweepArgs& args,
                    const std::string& out_path) {
  if (args.gammas.empty()) throw domain_error("loss-sweep: --gammas is required");
  if (args.grid_n < 2) throw domain_error("loss-sweep: --grid-n must be >= 2");
  const complexd alpha0{config.alpha0, 0.0};
  const TruncationPolicy policy = one_mode_policy(config, args.cutoff_given);
  const double chi = config.chi != 0.0 ? config.chi : kPi * args.x;

  std::ofstream out(out_path);
  if (!out) throw domain_error("cannot open for writing: " + out_path);
  out << "alpha_real,d_value,gamma\n";
  const double step = (args.a_max - args.a_min) / double(args.grid_n - 1);
  for (double gamma : args.gammas) {
    if (gamma < 0.0) throw domain_error("loss-sweep: gamma must be >= 0");
    const LossParams params{chi, gamma, config.t};
    for (int i = 0; i < args.grid_n; ++i) {
      const double a = args.a_min + step * i;
      const double d = damped_decision(complexd{a, 0.0}, params, alpha0, policy);
      out << format_double(a) << "," << format_double(d) << ","
          << format_double(gamma) << "\n";
    }
  }
  if (!out) throw domain_error("write failed: " + out_path);
}

void cmd_grid_search(const ExperimentConfig& config,
                     const std::vector<double>& c_grid,
                     const std::vector<double>& gamma_grid,
                     const std::string& out_path) {
  const std::uint64_t seed = require_seed(config);
  std::vector<LabeledPoint> dataset =
      subsample(load_dataset(config), config.sample_size, seed);
  TrainOptions options;
  options.tol = config.tol;
  options.max_passes = config.max_passes;
  options.train_fraction = config.split;
  options.split_seed = seed;

  const GridSearchResult best = grid_search(dataset, c_grid, gamma_grid, options);
  nlohmann::json doc = metrics_to_json(best.metrics);
  doc["C"] = best.C;
  doc["gamma"] = best.gamma;
  doc["seed"] = seed;
  doc["set_size"] = dataset.size();
  write_json_file(out_path, doc);
  std::cout << doc.dump(2) << "\n";
}

}  // namespace kerrml::cli
