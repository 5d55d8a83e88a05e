#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace kerrml::cli {

// Per-subcommand entry points. All throw kerrml::domain_error /
// kerrml::numerical_error; main maps those to exit codes 1 / 2.

void cmd_gen_data(const ExperimentConfig& config, long n,
                  const std::string& out_path);

void cmd_sample_displacements(const ExperimentConfig& config, double sigma,
                              int count, double max_abs2,
                              const std::string& out_path);

void cmd_label(const ExperimentConfig& config, const std::string& out_path,
               const std::string& summary_path);

void cmd_train(const ExperimentConfig& config, const std::string& out_path,
               const std::string& boundary_path);

void cmd_predict(const ExperimentConfig& config, const std::string& model_path,
                 const std::string& out_path);

struct WignerArgs {
  double x1 = 0.0;
  bool two_mode = false;
  double x2 = 0.0;
  double nu_re = 0.0;
  double nu_im = 0.0;
  double re_min = -3.0, re_max = 3.0;
  double im_min = -3.0, im_max = 3.0;
  int grid_n = 61;
  bool cutoff_given = false;
};
void cmd_wigner(const ExperimentConfig& config, const WignerArgs& args,
                const std::string& out_path);

struct SequentialArgs {
  double x = 0.0;
  int label = +1;
  double mu0_re = 0.0;
  double mu0_im = 0.0;
  int epochs = 100;
  double eta = 0.1;
  std::string gradient = "empirical-fd";
  double probe_delta = 0.05;
  bool cutoff_given = false;
};
void cmd_sequential(const ExperimentConfig& config, const SequentialArgs& args,
                    const std::string& out_path);

void cmd_kernel(const ExperimentConfig& config, const std::string& mode,
                const std::string& out_path);

struct LossSweepArgs {
  double x = 0.25;
  std::vector<double> gammas;
  double a_min = -3.0, a_max = 3.0;
  int grid_n = 121;
  bool cutoff_given = false;
};
void cmd_loss_sweep(const ExperimentConfig& config, const LossSweepArgs& args,
                    const std::string& out_path);

void cmd_grid_search(const ExperimentConfig& config,
                     const std::vector<double>& c_grid,
                     const std::vector<double>& gamma_grid,
                     const std::string& out_path);

}  // namespace kerrml::cli
