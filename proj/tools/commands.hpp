#pragma once

#include "config.hpp"

namespace qrk::cli {

/// Subcommand bodies. Each throws (ConfigError or qrk::Error) on failure and
/// returns 0 on success; main() maps exceptions to exit codes.
int cmd_generate(const ExperimentConfig& config);
int cmd_solve(const ExperimentConfig& config);
int cmd_bound(const ExperimentConfig& config);
int cmd_detect(const ExperimentConfig& config);

}  // namespace qrk::cli
