#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qrk/solvers.hpp"
#include "qrk/system_model.hpp"
#include "toml_lite.hpp"

namespace qrk::cli {

/// Fully explicit description of a run: instance, algorithm, perturbation
/// models, trial count, and bound options. Everything that feeds randomness
/// is seeded here so a config determines every output byte.
struct ExperimentConfig {
  // [instance]
  qrk::Index m = 2000;
  qrk::Index n = 100;
  std::uint64_t instance_seed = 1;
  double x_star_stddev = 1.0;
  std::string instance_file;  // when set, load this instead of building

  // [solver]
  qrk::Algorithm algorithm = qrk::Algorithm::qrk2;
  double q = 0.6;
  std::int64_t iterations = 10000;
  std::optional<double> early_stop_error_sq;

  // [noise]
  qrk::NoiseModel noise;

  // [corruption]
  qrk::CorruptionModel corruption;

  // [run]
  std::int64_t trials = 10;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";
  bool detect = false;

  // [bound]
  bool bound_enabled = true;
  std::int64_t num_subsets = 100;
  bool realized_noisediff = false;
  double detection_margin = 10.0;
};

ExperimentConfig parse_experiment_config(const TomlTable& table);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace qrk::cli
