#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/version.hpp"

namespace {

using kerrml::cli::ExperimentConfig;

// Splits "a,b,c" into doubles; used for grid flags.
std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) {
      try {
        values.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw kerrml::domain_error("malformed number '" + token + "' in list");
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// Config file values act as defaults; explicit flags override them. The
// config path is pulled out before CLI11 sees the rest.
ExperimentConfig preload_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      return kerrml::cli::load_config_file(argv[i + 1]);
    }
  }
  return ExperimentConfig{};
}

void add_common_flags(CLI::App* cmd, ExperimentConfig& config,
                      std::uint64_t& seed_value, std::string& config_path) {
  cmd->add_option("--config", config_path,
                  "JSON config file (flags override its values)")
      ->check(CLI::ExistingFile);
  cmd->add_option_function<std::uint64_t>(
         "--seed", [&](std::uint64_t v) { config.seed = v; seed_value = v; },
         "RNG seed (required for stochastic commands)");
  cmd->add_option("--alpha0", config.alpha0, "fiducial coherent amplitude");
  cmd->add_option("--r0", config.r0, "fiducial squeezing parameter");
  cmd->add_option("--cutoff", config.cutoff, "Fock-space cutoff per mode");
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig config;
  try {
    config = preload_config(argc, argv);
  } catch (const kerrml::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kerrml::exit_domain_error;
  }

  CLI::App app{"Kerr-kernel quantum classifier simulator"};
  app.set_version_flag("--version", kerrml::version_string);
  app.require_subcommand(1);
  std::uint64_t seed_sink = 0;
  std::string config_path;

  // gen-data
  long gen_n = 1000;
  std::string gen_out = "points.csv";
  CLI::App* gen = app.add_subcommand("gen-data", "uniform points on the unit square");
  add_common_flags(gen, config, seed_sink, config_path);
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--out", gen_out, "output CSV path");

  // sample-displacements
  double sd_sigma = 1.0, sd_max_abs2 = 3.0;
  int sd_count = 4;
  std::string sd_out = "displacements.json";
  CLI::App* sd = app.add_subcommand("sample-displacements",
                                    "draw Gaussian displacement pairs");
  add_common_flags(sd, config, seed_sink, config_path);
  sd->add_option("--sigma", sd_sigma, "component variance");
  sd->add_option("--count", sd_count, "number of pairs");
  sd->add_option("--max-abs2", sd_max_abs2, "rejection bound on |mu|^2, |nu|^2");
  sd->add_option("--out", sd_out, "output JSON path");

  // label
  std::string label_out = "labeled.csv", label_summary;
  CLI::App* label = app.add_subcommand("label", "label points by displaced parity");
  add_common_flags(label, config, seed_sink, config_path);
  label->add_option("--data", config.data_path, "input points CSV");
  label->add_option("--displacements", config.displacements_path,
                    "displacement sets JSON");
  label->add_option("--set", config.set_name, "displacement set name");
  label->add_option("--out", label_out, "output labeled CSV");
  label->add_option("--summary-out", label_summary, "optional summary JSON path");

  // train
  std::string train_out = "report.json", train_boundary;
  CLI::App* train = app.add_subcommand("train", "train and score a kernel SVM");
  add_common_flags(train, config, seed_sink, config_path);
  train->add_option("--data", config.data_path, "labeled CSV");
  train->add_option("--kernel", config.kernel,
                    "kerr-coherent-1mode|kerr-coherent-2mode|kerr-squeezed-2mode|fidelity|rbf");
  train->add_option("--C", config.C, "soft-margin penalty");
  train->add_option("--gamma", config.gamma, "RBF gamma (-1 = scale rule)");
  train->add_option("--sample", config.sample_size,
                    "subsample size (0 = entire dataset)");
  train->add_option("--split", config.split, "training fraction");
  train->add_option("--tol", config.tol, "solver stopping tolerance");
  train->add_option("--max-passes", config.max_passes, "solver sweep budget");
  train->add_option("--set-name", config.set_name, "label of the experiment");
  train->add_option("--out", train_out, "report JSON path");
  train->add_option("--boundary-out", train_boundary,
                    "optional decision-boundary mesh CSV (h = 0.02)");

  // predict
  std::string predict_model, predict_out = "predictions.csv";
  CLI::App* predict = app.add_subcommand("predict", "apply a trained model");
  add_common_flags(predict, config, seed_sink, config_path);
  predict->add_option("--model", predict_model, "train report JSON")->required();
  predict->add_option("--data", config.data_path, "points CSV (labeled or not)");
  predict->add_option("--out", predict_out, "output labeled CSV");

  // wigner
  kerrml::cli::WignerArgs wigner_args;
  std::string wigner_out = "wigner.csv";
  double wigner_x2 = -1.0;
  CLI::App* wigner = app.add_subcommand("wigner", "decision-function grid export");
  add_common_flags(wigner, config, seed_sink, config_path);
  wigner->add_option("--x", wigner_args.x1, "encoded data value")->required();
  wigner->add_option("--x2", wigner_x2, "second coordinate (two-mode slice)");
  wigner->add_option("--nu-re", wigner_args.nu_re, "fixed nu, real part");
  wigner->add_option("--nu-im", wigner_args.nu_im, "fixed nu, imaginary part");
  wigner->add_option("--re-min", wigner_args.re_min, "grid lower bound, real");
  wigner->add_option("--re-max", wigner_args.re_max, "grid upper bound, real");
  wigner->add_option("--im-min", wigner_args.im_min, "grid lower bound, imag");
  wigner->add_option("--im-max", wigner_args.im_max, "grid upper bound, imag");
  wigner->add_option("--grid-n", wigner_args.grid_n, "points per axis");
  wigner->add_option("--gamma-loss", config.gamma_loss,
                     "photon loss rate (single mode only)");
  wigner->add_option("--t", config.t, "evolution time for the loss model");
  wigner->add_option("--out", wigner_out, "output CSV path");

  // sequential
  kerrml::cli::SequentialArgs seq_args;
  std::string seq_out = "trace.csv";
  CLI::App* sequential =
      app.add_subcommand("sequential", "gradient-feedback displacement tuning");
  add_common_flags(sequential, config, seed_sink, config_path);
  sequential->add_option("--x", seq_args.x, "encoded data value")->required();
  sequential->add_option("--label", seq_args.label, "true label (+1 or -1)");
  sequential->add_option("--mu0-re", seq_args.mu0_re, "initial mu, real part");
  sequential->add_option("--mu0-im", seq_args.mu0_im, "initial mu, imaginary part");
  sequential->add_option("--epochs", seq_args.epochs, "number of epochs");
  sequential->add_option("--shots", config.shots, "parity shots per epoch");
  sequential->add_option("--eta", seq_args.eta, "learning rate");
  sequential->add_option("--gradient", seq_args.gradient,
                         "empirical-fd|analytic|exact");
  sequential->add_option("--probe-delta", seq_args.probe_delta,
                         "finite-difference probe radius");
  sequential->add_option("--out", seq_out, "trace CSV path");

  // kernel
  std::string kernel_mode = "exact", kernel_out = "gram.csv";
  CLI::App* kernel = app.add_subcommand("kernel", "Gram matrix construction");
  add_common_flags(kernel, config, seed_sink, config_path);
  kernel->add_option("--data", config.data_path, "points CSV");
  kernel->add_option("--kernel", config.kernel, "kernel kind");
  kernel->add_option("--mode", kernel_mode, "exact|sampled");
  kernel->add_option("--shots", config.shots, "shots per entry (sampled mode)");
  kernel->add_option("--out", kernel_out, "Gram CSV path");

  // loss-sweep
  kerrml::cli::LossSweepArgs loss_args;
  std::string loss_gammas, loss_out = "loss_sweep.csv";
  CLI::App* loss = app.add_subcommand("loss-sweep",
                                      "real-axis decision sections under loss");
  add_common_flags(loss, config, seed_sink, config_path);
  loss->add_option("--x", loss_args.x, "encoded data value");
  loss->add_option("--gammas", loss_gammas, "comma-separated loss rates")->required();
  loss->add_option("--chi", config.chi, "Kerr rate (default pi * x)");
  loss->add_option("--t", config.t, "evolution time");
  loss->add_option("--a-min", loss_args.a_min, "grid lower bound");
  loss->add_option("--a-max", loss_args.a_max, "grid upper bound");
  loss->add_option("--grid-n", loss_args.grid_n, "grid points");
  loss->add_option("--out", loss_out, "output CSV path");

  // grid-search
  std::string gs_c_grid = "1,10,100,1000,10000";
  std::string gs_gamma_grid = "0.1,1,10,100,1000";
  std::string gs_out = "grid_search.json";
  CLI::App* gs = app.add_subcommand("grid-search", "RBF hyperparameter search");
  add_common_flags(gs, config, seed_sink, config_path);
  gs->add_option("--data", config.data_path, "labeled CSV");
  gs->add_option("--c-grid", gs_c_grid, "comma-separated C values");
  gs->add_option("--gamma-grid", gs_gamma_grid, "comma-separated gamma values");
  gs->add_option("--sample", config.sample_size,
                 "subsample size (0 = entire dataset)");
  gs->add_option("--split", config.split, "training fraction");
  gs->add_option("--out", gs_out, "result JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kerrml::exit_success : kerrml::exit_domain_error;
  }

  try {
    if (*gen) {
      kerrml::cli::cmd_gen_data(config, gen_n, gen_out);
    } else if (*sd) {
      kerrml::cli::cmd_sample_displacements(config, sd_sigma, sd_count,
                                            sd_max_abs2, sd_out);
    } else if (*label) {
      kerrml::cli::cmd_label(config, label_out, label_summary);
    } else if (*train) {
      kerrml::cli::cmd_train(config, train_out, train_boundary);
    } else if (*predict) {
      kerrml::cli::cmd_predict(config, predict_model, predict_out);
    } else if (*wigner) {
      wigner_args.two_mode = wigner->count("--x2") > 0;
      if (wigner_args.two_mode) wigner_args.x2 = wigner_x2;
      wigner_args.cutoff_given = wigner->count("--cutoff") > 0;
      kerrml::cli::cmd_wigner(config, wigner_args, wigner_out);
    } else if (*sequential) {
      seq_args.cutoff_given = sequential->count("--cutoff") > 0;
      kerrml::cli::cmd_sequential(config, seq_args, seq_out);
    } else if (*kernel) {
      kerrml::cli::cmd_kernel(config, kernel_mode, kernel_out);
    } else if (*loss) {
      loss_args.gammas = parse_double_list(loss_gammas);
      loss_args.cutoff_given = loss->count("--cutoff") > 0;
      kerrml::cli::cmd_loss_sweep(config, loss_args, loss_out);
    } else if (*gs) {
      kerrml::cli::cmd_grid_search(config, parse_double_list(gs_c_grid),
                                   parse_double_list(gs_gamma_grid), gs_out);
    }
  } catch (const kerrml::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kerrml::exit_domain_error;
  } catch (const kerrml::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kerrml::exit_numerical_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kerrml::exit_domain_error;
  }
  return kerrml::exit_success;
}
