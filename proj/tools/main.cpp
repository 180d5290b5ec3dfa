#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "qrk/errors.hpp"

namespace {

struct CommonOverrides {
  std::string config_path;
  std::string out_dir;
  std::optional<std::int64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<std::int64_t> iters;
  std::optional<int> threads;
};

qrk::cli::ExperimentConfig load_with_overrides(const CommonOverrides& overrides) {
  qrk::cli::ExperimentConfig config = qrk::cli::load_experiment_config(overrides.config_path);
  if (!overrides.out_dir.empty()) config.out_dir = overrides.out_dir;
  if (overrides.seed) {
    config.master_seed = static_cast<std::uint64_t>(*overrides.seed);
    config.instance_seed = static_cast<std::uint64_t>(*overrides.seed);
  }
  if (overrides.trials) config.trials = *overrides.trials;
  if (overrides.iters) config.iterations = *overrides.iters;
  if (overrides.threads) config.threads = *overrides.threads;
  return config;
}

void add_common_flags(CLI::App* cmd, CommonOverrides& overrides, bool config_required = true) {
  auto* opt = cmd->add_option("--config", overrides.config_path, "experiment config (TOML)");
  if (config_required) opt->required();
  cmd->add_option("--out", overrides.out_dir, "output directory");
  cmd->add_option("--seed", overrides.seed, "master seed override");
  cmd->add_option("--trials", overrides.trials, "trial count override");
  cmd->add_option("--iters", overrides.iters, "iteration count override");
  cmd->add_option("--threads", overrides.threads, "worker threads (0 = auto)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers and experiments for overdetermined linear systems with "
               "time-varying noise and sparse corruption"};
  app.require_subcommand(1);

  CommonOverrides generate_args, solve_args, bound_args, detect_args;
  auto* generate = app.add_subcommand("generate", "build and serialize a problem instance");
  add_common_flags(generate, generate_args);
  auto* solve = app.add_subcommand("solve", "run seeded trials and write trace.csv");
  add_common_flags(solve, solve_args);
  auto* bound = app.add_subcommand("bound", "tabulate the theoretical curves into bounds.csv");
  add_common_flags(bound, bound_args);
  auto* detect = app.add_subcommand("detect", "run trials with corruption detection scoring");
  add_common_flags(detect, detect_args);

  std::string experiment_name;
  qrk::cli::ExperimentOptions experiment_options;
  std::int64_t experiment_seed = 1;
  auto* experiment = app.add_subcommand("experiment", "regenerate a named experiment family");
  experiment->add_option("name", experiment_name, "one of the known experiment names")->required();
  experiment->add_option("--scale", experiment_options.scale,
                         "row-count scale factor in (0, 1]; m = ceil(scale * 20000)");
  experiment->add_option("--seed", experiment_seed, "master seed");
  experiment->add_option("--trials", experiment_options.trials, "trials to average");
  experiment->add_option("--iters", experiment_options.iterations, "iteration override (0 = auto)");
  experiment->add_option("--threads", experiment_options.threads, "worker threads (0 = auto)");
  experiment->add_option("--out", experiment_options.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      return qrk::cli::cmd_generate(load_with_overrides(generate_args));
    }
    if (solve->parsed()) {
      return qrk::cli::cmd_solve(load_with_overrides(solve_args));
    }
    if (bound->parsed()) {
      return qrk::cli::cmd_bound(load_with_overrides(bound_args));
    }
    if (detect->parsed()) {
      return qrk::cli::cmd_detect(load_with_overrides(detect_args));
    }
    if (experiment->parsed()) {
      experiment_options.seed = static_cast<std::uint64_t>(experiment_seed);
      const auto written = qrk::cli::run_experiment(experiment_name, experiment_options);
      for (const auto& path : written) {
        std::cout << "wrote " << path.string() << "\n";
      }
      return 0;
    }
  } catch (const qrk::cli::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const qrk::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
