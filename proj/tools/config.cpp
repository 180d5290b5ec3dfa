#include "config.hpp"

namespace qrk::cli {

namespace {

qrk::NoiseModel parse_noise(const TomlTable& table) {
  const std::string kind = table.get_string_or("noise.kind", "none");
  if (kind == "none") {
    return qrk::NoiseModel::none_model();
  }
  if (kind == "gaussian") {
    return qrk::NoiseModel::gaussian_model(table.get_double_or("noise.mu", 0.0),
                                           table.get_double("noise.sigma"));
  }
  if (kind == "uniform_bounded") {
    return qrk::NoiseModel::uniform_bounded_model(table.get_double("noise.n_max"));
  }
  throw ConfigError("noise.kind must be one of none, gaussian, uniform_bounded");
}

qrk::CorruptionModel parse_corruption(const TomlTable& table) {
  const double beta = table.get_double_or("corruption.beta", 0.0);
  if (beta == 0.0) {
    return qrk::CorruptionModel::none_model();
  }
  const double magnitude = table.get_double("corruption.magnitude");
  const std::string schedule = table.get_string_or("corruption.schedule", "time_varying");
  qrk::CorruptionSchedule parsed_schedule;
  if (schedule == "time_varying") {
    parsed_schedule = qrk::CorruptionSchedule::time_varying;
  } else if (schedule == "static") {
    parsed_schedule = qrk::CorruptionSchedule::static_support;
  } else {
    throw ConfigError("corruption.schedule must be 'static' or 'time_varying'");
  }
  return qrk::CorruptionModel::fixed(beta, magnitude, parsed_schedule);
}

}  // namespace

ExperimentConfig parse_experiment_config(const TomlTable& table) {
  ExperimentConfig config;
  config.m = table.get_integer_or("instance.m", config.m);
  config.n = table.get_integer_or("instance.n", config.n);
  config.instance_seed =
      static_cast<std::uint64_t>(table.get_integer_or("instance.seed", 1));
  config.x_star_stddev = table.get_double_or("instance.x_star_stddev", 1.0);
  config.instance_file = table.get_string_or("instance.file", "");
  if (config.instance_file.empty() && config.m <= config.n) {
    throw ConfigError("instance.m must exceed instance.n (overdetermined system)");
  }

  try {
    config.algorithm = qrk::algorithm_from_name(table.get_string_or("solver.algorithm", "qrk2"));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  config.q = table.get_double_or("solver.q", 0.6);
  if (config.algorithm != qrk::Algorithm::rk && !(config.q > 0.0 && config.q < 1.0)) {
    throw ConfigError("solver.q must lie in (0, 1)");
  }
  config.iterations = table.get_integer_or("solver.iterations", 10000);
  if (config.iterations < 0) {
    throw ConfigError("solver.iterations must be >= 0");
  }
  if (table.contains("solver.early_stop_error_sq")) {
    config.early_stop_error_sq = table.get_double("solver.early_stop_error_sq");
  }

  try {
    config.noise = parse_noise(table);
    config.corruption = parse_corruption(table);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }

  config.trials = table.get_integer_or("run.trials", 10);
  if (config.trials < 1) {
    throw ConfigError("run.trials must be >= 1");
  }
  config.master_seed = static_cast<std::uint64_t>(
      table.get_integer_or("run.seed", static_cast<std::int64_t>(config.instance_seed)));
  config.threads = static_cast<int>(table.get_integer_or("run.threads", 0));
  config.out_dir = table.get_string_or("run.out", "out");
  config.detect = table.get_bool_or("run.detect", false);

  config.bound_enabled = table.get_bool_or("bound.enabled", true);
  config.num_subsets = table.get_integer_or("bound.num_subsets", 100);
  if (config.num_subsets < 1) {
    throw ConfigError("bound.num_subsets must be >= 1");
  }
  const std::string mode = table.get_string_or("bound.noisediff", "expected");
  if (mode == "expected") {
    config.realized_noisediff = false;
  } else if (mode == "realized") {
    config.realized_noisediff = true;
  } else {
    throw ConfigError("bound.noisediff must be 'expected' or 'realized'");
  }
  config.detection_margin = table.get_double_or("bound.margin", 10.0);
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(TomlTable::parse_file(path));
}

}  // namespace qrk::cli
