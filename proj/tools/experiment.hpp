#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "qrk/bounds.hpp"
#include "qrk/solvers.hpp"

namespace qrk::cli {

/// Trial-averaged per-iteration series. Means are accumulated in trial order,
/// so the aggregate is independent of worker scheduling.
struct Aggregate {
  std::int64_t trials = 0;
  std::vector<double> mean_error_sq;
  std::vector<double> mean_quantile;            // empty for rk
  std::vector<double> accept_rate;
  std::vector<double> mean_detected_fraction;   // empty unless detection is on
  std::vector<double> full_recovery_freq;       // empty unless detection is on
  std::vector<double> mean_noisediff;           // empty unless noise is active (qrk only)
  std::vector<double> mean_noise_l1_sq;         // likewise
};

/// Runs `trials` independent solves (each with its own derived streams) and
/// aggregates the traces. detect_top_count > 0 turns on per-iteration
/// detection scoring.
Aggregate run_trials(const qrk::ProblemInstance& instance, const qrk::NoiseModel& noise,
                     const qrk::CorruptionModel& corruption, qrk::Algorithm algorithm, double q,
                     std::int64_t iterations, std::int64_t trials, std::uint64_t master_seed,
                     std::int64_t detect_top_count, int threads);

/// A per-iteration theoretical curve; `values` entries are empty when the
/// curve is unavailable (bad regime, non-positive rate, unsupported noise).
struct BoundSeries {
  std::vector<std::optional<double>> values;
  std::string status = "ok";
  std::optional<qrk::RateParams> rate;
  double sigma_subset_min = 0.0;
  double err0_sq = 0.0;
};

/// Quantile-solver bound curve. The subset conditioning parameter is
/// estimated from `num_subsets` sampled row subsets (seeded); horizon
/// contributions come from the noise model's moments, or from the realized
/// trial averages when `realized` is non-null.
BoundSeries qrk_bound_series(const qrk::ProblemInstance& instance, const qrk::NoiseModel& noise,
                             double beta, qrk::Algorithm algorithm, double q,
                             std::int64_t iterations, double err0_sq, std::int64_t num_subsets,
                             std::uint64_t master_seed, const Aggregate* realized);

/// Plain-rk noisy bound curve (valid for any i.i.d. noise with known moments).
std::vector<double> rk_bound_series(const qrk::ProblemInstance& instance,
                                    const qrk::NoiseModel& noise, std::int64_t iterations,
                                    double err0_sq);

/// Detection-probability curve (empty when the rate parameter is not positive
/// or the margin condition fails).
BoundSeries detection_bound_series(const qrk::ProblemInstance& instance, double beta,
                                   qrk::Algorithm algorithm, double q, std::int64_t iterations,
                                   double err0_sq, double c_min, double n_max, double margin,
                                   std::int64_t num_subsets, std::uint64_t master_seed);

struct ExperimentOptions {
  double scale = 1.0;
  std::uint64_t seed = 1;
  std::int64_t trials = 10;
  std::int64_t iterations = 0;  // 0 = derived from the problem size
  int threads = 0;
  std::filesystem::path out_dir = "out";
};

bool is_known_experiment(const std::string& name);
const std::vector<std::string>& known_experiments();

/// Regenerates one named experiment family at the given scale; returns the
/// paths written (one CSV and one SVG).
std::vector<std::filesystem::path> run_experiment(const std::string& name,
                                                  const ExperimentOptions& options);

}  // namespace qrk::cli
