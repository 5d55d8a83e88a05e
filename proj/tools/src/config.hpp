#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace kerrml::cli {

// Resolved experiment settings shared by the subcommands. Values may come
// from a JSON config file (--config), command-line flags (which win), or the
// defaults below. Reports embed the resolved struct so a run can be
// reproduced from its own output.
struct ExperimentConfig {
  std::optional<std::uint64_t> seed;
  double alpha0 = 1.0;
  double r0 = 0.0;
  int cutoff = 10;
  std::string kernel = "kerr-coherent-2mode";
  std::string displacements_path;
  std::string set_name;
  std::string data_path;
  long sample_size = 2000;  // 0 = use the whole dataset
  double split = 0.7;
  double C = 1.0;
  double gamma = -1.0;  // -1 = resolve by the "scale" rule
  long shots = 0;
  double tol = 1e-3;
  int max_passes = 200;
  double chi = 0.0;
  double gamma_loss = 0.0;
  double t = 1.0;
};

// Serialization is tolerant on read: absent keys keep their defaults.
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);

// Loads a config file; accepts either a bare config object or a train
// report (anything with a "config" member, which is then used).
ExperimentConfig load_config_file(const std::string& path);

std::uint64_t require_seed(const ExperimentConfig& config);

}  // namespace kerrml::cli
