#include "config.hpp"

#include <fstream>

#include "kerrml/errors.hpp"

namespace kerrml::cli {

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json doc{
      {"alpha0", config.alpha0},
      {"r0", config.r0},
      {"cutoff", config.cutoff},
      {"kernel", config.kernel},
      {"displacements", config.displacements_path},
      {"set_name", config.set_name},
      {"data", config.data_path},
      {"sample_size", config.sample_size},
      {"split", config.split},
      {"C", config.C},
      {"gamma", config.gamma},
      {"shots", config.shots},
      {"tol", config.tol},
      {"max_passes", config.max_passes},
      {"chi", config.chi},
      {"gamma_loss", config.gamma_loss},
      {"t", config.t},
  };
  if (config.seed) doc["seed"] = *config.seed;
  return doc;
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw domain_error("config must be a JSON object");
  }
  ExperimentConfig config;
  auto read = [&doc](const char* key, auto& field) {
    if (doc.contains(key)) {
      doc.at(key).get_to(field);
    }
  };
  if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
  read("alpha0", config.alpha0);
  read("r0", config.r0);
  read("cutoff", config.cutoff);
  read("kernel", config.kernel);
  read("displacements", config.displacements_path);
  read("set_name", config.set_name);
  read("data", config.data_path);
  read("sample_size", config.sample_size);
  read("split", config.split);
  read("C", config.C);
  read("gamma", config.gamma);
  read("shots", config.shots);
  read("tol", config.tol);
  read("max_passes", config.max_passes);
  read("chi", config.chi);
  read("gamma_loss", config.gamma_loss);
  read("t", config.t);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw domain_error("malformed config JSON " + path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("config")) {
    return config_from_json(doc.at("config"));
  }
  return config_from_json(doc);
}

std::uint64_t require_seed(const ExperimentConfig& config) {
  if (!config.seed) {
    throw domain_error("this command is stochastic: --seed is required");
  }
  return *config.seed;
}

}  // namespace kerrml::cli
