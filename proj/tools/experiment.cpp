#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#include "csv.hpp"
#include "qrk/errors.hpp"
#include "svg.hpp"

namespace qrk::cli {

namespace {

int effective_threads(int requested, std::int64_t trials) {
  int threads = requested > 0 ? requested
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  return static_cast<int>(std::min<std::int64_t>(threads, trials));
}

std::string trim_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

}  // namespace

Aggregate run_trials(const qrk::ProblemInstance& instance, const qrk::NoiseModel& noise,
                     const qrk::CorruptionModel& corruption, qrk::Algorithm algorithm, double q,
                     std::int64_t iterations, std::int64_t trials, std::uint64_t master_seed,
                     std::int64_t detect_top_count, int threads) {
  const bool quantile_run = algorithm != qrk::Algorithm::rk;
  const bool noise_active = !noise.is_zero() && quantile_run;

  struct TrialSeries {
    std::vector<double> error_sq;
    std::vector<double> quantile;
    std::vector<std::uint8_t> accepted;
    std::vector<double> detected;
    std::vector<std::uint8_t> full_recovery;
    std::vector<double> noisediff;
    std::vector<double> noise_l1_sq;
  };
  std::vector<TrialSeries> per_trial(static_cast<std::size_t>(trials));

  std::atomic<std::int64_t> next_trial{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&]() {
    for (;;) {
      const std::int64_t t = next_trial.fetch_add(1);
      if (t >= trials) {
        return;
      }
      try {
        qrk::SolverConfig config;
        config.algorithm = algorithm;
        config.q = q;
        config.iterations = iterations;
        config.seed = qrk::derive_seed(master_seed, qrk::StreamPurpose::trial,
                                       static_cast<std::uint64_t>(t));
        config.detect_top_count = detect_top_count;
        const qrk::SolveResult result = qrk::solve(instance, noise, corruption, config);

        TrialSeries& series = per_trial[static_cast<std::size_t>(t)];
        const std::size_t n_records = result.trace.size();
        series.error_sq.resize(n_records);
        if (quantile_run) {
          series.quantile.resize(n_records);
          series.accepted.resize(n_records);
        }
        if (detect_top_count > 0) {
          series.detected.resize(n_records);
          series.full_recovery.resize(n_records);
        }
        if (noise_active) {
          series.noisediff.resize(n_records);
          series.noise_l1_sq.resize(n_records);
        }
        for (std::size_t i = 0; i < n_records; ++i) {
          const qrk::TraceRecord& record = result.trace[i];
          series.error_sq[i] = record.error_sq;
          if (quantile_run) {
            series.quantile[i] = record.residual_quantile;
            series.accepted[i] = record.accepted ? 1 : 0;
          }
          if (detect_top_count > 0) {
            series.detected[i] = record.detected_fraction;
            series.full_recovery[i] = record.full_recovery ? 1 : 0;
          }
          if (noise_active) {
            series.noisediff[i] = record.noisediff_clean;
            series.noise_l1_sq[i] = record.noise_l1 * record.noise_l1;
          }
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };

  const int worker_count = effective_threads(threads, trials);
  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) {
      pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
      th.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }

  Aggregate aggregate;
  aggregate.trials = trials;
  const std::size_t n_records = per_trial.front().error_sq.size();
  for (const TrialSeries& series : per_trial) {
    if (series.error_sq.size() != n_records) {
      throw qrk::NumericalError("trial traces have inconsistent lengths");
    }
  }
  const double inv_trials = 1.0 / static_cast<double>(trials);
  aggregate.mean_error_sq.assign(n_records, 0.0);
  if (quantile_run) {
    aggregate.mean_quantile.assign(n_records, 0.0);
    aggregate.accept_rate.assign(n_records, 0.0);
  }
  if (detect_top_count > 0) {
    aggregate.mean_detected_fraction.assign(n_records, 0.0);
    aggregate.full_recovery_freq.assign(n_records, 0.0);
  }
  if (noise_active) {
    aggregate.mean_noisediff.assign(n_records, 0.0);
    aggregate.mean_noise_l1_sq.assign(n_records, 0.0);
  }
  for (std::int64_t t = 0; t < trials; ++t) {  // fixed order: deterministic sums
    const TrialSeries& series = per_trial[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < n_records; ++i) {
      aggregate.mean_error_sq[i] += series.error_sq[i];
      if (quantile_run) {
        aggregate.mean_quantile[i] += series.quantile[i];
        aggregate.accept_rate[i] += series.accepted[i];
      }
      if (detect_top_count > 0) {
        aggregate.mean_detected_fraction[i] += series.detected[i];
        aggregate.full_recovery_freq[i] += series.full_recovery[i];
      }
      if (noise_active) {
        aggregate.mean_noisediff[i] += series.noisediff[i];
        aggregate.mean_noise_l1_sq[i] += series.noise_l1_sq[i];
      }
    }
  }
  for (std::size_t i = 0; i < n_records; ++i) {
    aggregate.mean_error_sq[i] *= inv_trials;
    if (quantile_run) {
      aggregate.mean_quantile[i] *= inv_trials;
      aggregate.accept_rate[i] *= inv_trials;
    }
    if (detect_top_count > 0) {
      aggregate.mean_detected_fraction[i] *= inv_trials;
      aggregate.full_recovery_freq[i] *= inv_trials;
    }
    if (noise_active) {
      aggregate.mean_noisediff[i] *= inv_trials;
      aggregate.mean_noise_l1_sq[i] *= inv_trials;
    }
  }
  return aggregate;
}

namespace {

/// Expected per-iteration horizon contributions for the noise model, or
/// nothing when the model has no usable closed form.
std::optional<std::pair<double, double>> expected_horizon_increment(const qrk::NoiseModel& noise,
                                                                    std::int64_t m) {
  if (noise.is_zero()) {
    return std::make_pair(0.0, 0.0);
  }
  switch (noise.kind) {
    case qrk::NoiseKind::gaussian:
    case qrk::NoiseKind::custom: {
      if (noise.kind == qrk::NoiseKind::gaussian && noise.mu != 0.0) {
        return std::nullopt;
      }
      const qrk::FoldedMoments folded = qrk::folded_moments(noise);
      const double md = static_cast<double>(m);
      const double noisediff = noise.mu * noise.mu + noise.sigma * noise.sigma;
      const double l1_sq = md * md * folded.mu_abs * folded.mu_abs +
                           md * folded.sigma_abs * folded.sigma_abs;
      return std::make_pair(noisediff, l1_sq);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

BoundSeries qrk_bound_series(const qrk::ProblemInstance& instance, const qrk::NoiseModel& noise,
                             double beta, qrk::Algorithm algorithm, double q,
                             std::int64_t iterations, double err0_sq, std::int64_t num_subsets,
                             std::uint64_t master_seed, const Aggregate* realized) {
  BoundSeries series;
  series.err0_sq = err0_sq;
  series.values.assign(static_cast<std::size_t>(iterations), std::nullopt);

  qrk::RandomStream subset_rng(qrk::derive_seed(master_seed, qrk::StreamPurpose::subset_sampling));
  try {
    series.sigma_subset_min =
        qrk::min_subset_sigma_sampled(instance.a, q, beta, num_subsets, subset_rng);
    series.rate = qrk::rate_params(instance.spectrum.sigma_max, series.sigma_subset_min, q, beta,
                                   instance.rows(), algorithm);
  } catch (const qrk::InvalidRegimeError& err) {
    series.status = std::string("invalid_regime: ") + err.what();
    return series;
  }
  if (!series.rate->assumption_holds()) {
    series.status = "rate_not_positive";
    return series;
  }

  std::pair<double, double> expected{0.0, 0.0};
  if (realized == nullptr) {
    const auto increment = expected_horizon_increment(noise, instance.rows());
    if (!increment) {
      series.status = "no_expected_noise_moments";
      return series;
    }
    expected = *increment;
  }

  qrk::HorizonAccumulator horizon(series.rate->p, series.rate->varphi, series.rate->zeta);
  for (std::int64_t k = 0; k < iterations; ++k) {
    double noisediff = expected.first;
    double noise_l1_sq = expected.second;
    if (realized != nullptr) {
      const auto idx = static_cast<std::size_t>(k);
      noisediff = idx < realized->mean_noisediff.size() ? realized->mean_noisediff[idx] : 0.0;
      noise_l1_sq =
          idx < realized->mean_noise_l1_sq.size() ? realized->mean_noise_l1_sq[idx] : 0.0;
    }
    const double horizon_k = horizon.update(noisediff, noise_l1_sq);
    series.values[static_cast<std::size_t>(k)] =
        qrk::qrk_error_bound(k, err0_sq, *series.rate, horizon_k);
  }
  return series;
}

std::vector<double> rk_bound_series(const qrk::ProblemInstance& instance,
                                    const qrk::NoiseModel& noise, std::int64_t iterations,
                                    double err0_sq) {
  std::vector<double> values(static_cast<std::size_t>(iterations));
  for (std::int64_t k = 0; k < iterations; ++k) {
    values[static_cast<std::size_t>(k)] =
        qrk::rk_noisy_bound(k, err0_sq, instance.rows(), instance.spectrum.frobenius_sq,
                            instance.spectrum.sigma_min, noise.mu, noise.sigma);
  }
  return values;
}

BoundSeries detection_bound_series(const qrk::ProblemInstance& instance, double beta,
                                   qrk::Algorithm algorithm, double q, std::int64_t iterations,
                                   double err0_sq, double c_min, double n_max, double margin,
                                   std::int64_t num_subsets, std::uint64_t master_seed) {
  BoundSeries series;
  series.err0_sq = err0_sq;
  series.values.assign(static_cast<std::size_t>(iterations), std::nullopt);
  qrk::RandomStream subset_rng(qrk::derive_seed(master_seed, qrk::StreamPurpose::subset_sampling));
  try {
    series.sigma_subset_min =
        qrk::min_subset_sigma_sampled(instance.a, q, beta, num_subsets, subset_rng);
    series.rate = qrk::rate_params(instance.spectrum.sigma_max, series.sigma_subset_min, q, beta,
                                   instance.rows(), algorithm);
    if (!series.rate->assumption_holds()) {
      series.status = "rate_not_positive";
      return series;
    }
    for (std::int64_t k = 0; k < iterations; ++k) {
      series.values[static_cast<std::size_t>(k)] =
          qrk::detection_probability(k, err0_sq, *series.rate, c_min, n_max, margin);
    }
  } catch (const qrk::InvalidRegimeError& err) {
    series.status = std::string("invalid_regime: ") + err.what();
  } catch (const qrk::MarginConditionError& err) {
    series.status = std::string("margin_condition_failed: ") + err.what();
  }
  return series;
}

// ---------------------------------------------------------------------------
// Named experiment families
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kBaseRows = 20000;
constexpr std::int64_t kColumns = 100;

const std::vector<std::string> kExperiments = {
    "fig2_left", "fig2_right", "fig3_q",       "fig3_beta",
    "fig3_sigma", "fig4_detect", "fig6_rk_mu", "fig6_rk_sigma",
};

std::int64_t clamp_iters(double value, std::int64_t lo, std::int64_t hi) {
  return std::clamp(static_cast<std::int64_t>(std::ceil(value)), lo, hi);
}

/// Iteration budget sized from the expected per-step contraction of the
/// admissible-subset spectrum, so scaled-down runs still reach their floor.
std::int64_t default_iterations_qrk(std::int64_t m, std::int64_t n, double q, double beta) {
  const double subset = std::floor((q - beta) * static_cast<double>(m));
  const double root_gap = std::max(std::sqrt(subset) - std::sqrt(static_cast<double>(n)), 1.0);
  const double sigma_sq = root_gap * root_gap / static_cast<double>(n);
  const double rate = sigma_sq * (q - beta) / (q * q * static_cast<double>(m));
  return clamp_iters(34.0 / rate, 2000, 200000);
}

std::int64_t default_iterations_rk(std::int64_t m, std::int64_t n) {
  const double root_gap =
      std::max(std::sqrt(static_cast<double>(m)) - std::sqrt(static_cast<double>(n)), 1.0);
  const double sigma_sq = root_gap * root_gap / static_cast<double>(n);
  const double rate = sigma_sq / static_cast<double>(m);
  return clamp_iters(30.0 / rate, 2000, 100000);
}

/// Keeps at least one corrupted row under downscaling.
double effective_beta(double beta, std::int64_t m) {
  if (beta > 0.0 && std::floor(beta * static_cast<double>(m)) < 1.0) {
    const double raised = 1.0 / static_cast<double>(m);
    std::cerr << "notice: beta=" << beta << " floors to zero corrupted rows at m=" << m
              << "; raising to " << raised << "\n";
    return raised;
  }
  return beta;
}

std::vector<std::optional<double>> to_cells(const std::vector<double>& values) {
  std::vector<std::optional<double>> cells(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    cells[i] = values[i];
  }
  return cells;
}

struct Column {
  std::string name;
  std::vector<std::optional<double>> values;
};

void write_figure(const std::filesystem::path& out_dir, const std::string& name,
                  const std::string& title, const std::string& y_label,
                  const std::vector<Column>& columns, std::int64_t iterations,
                  std::vector<std::filesystem::path>& written) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path csv_path = out_dir / (name + ".csv");
  std::vector<std::string> header = {"iter"};
  for (const Column& column : columns) {
    header.push_back(column.name);
  }
  CsvWriter csv(csv_path, header);
  for (std::int64_t k = 0; k < iterations; ++k) {
    std::vector<std::optional<double>> row;
    row.reserve(columns.size() + 1);
    row.emplace_back(static_cast<double>(k));
    for (const Column& column : columns) {
      const auto idx = static_cast<std::size_t>(k);
      row.push_back(idx < column.values.size() ? column.values[idx] : std::nullopt);
    }
    csv.write_row(row);
  }
  csv.close();
  written.push_back(csv_path);

  SvgLinePlot plot(title, "iteration", y_label);
  std::vector<double> xs(static_cast<std::size_t>(iterations));
  for (std::int64_t k = 0; k < iterations; ++k) {
    xs[static_cast<std::size_t>(k)] = static_cast<double>(k);
  }
  for (const Column& column : columns) {
    std::vector<double> ys(static_cast<std::size_t>(iterations),
                           std::numeric_limits<double>::quiet_NaN());
    bool any = false;
    for (std::size_t i = 0; i < column.values.size() && i < ys.size(); ++i) {
      if (column.values[i]) {
        ys[i] = *column.values[i];
        any = true;
      }
    }
    if (any) {
      plot.add_series(column.name, xs, ys);
    }
  }
  const std::filesystem::path svg_path = out_dir / (name + ".svg");
  plot.write(svg_path);
  written.push_back(svg_path);
}

struct FigureContext {
  std::string name;
  ExperimentOptions options;
  std::int64_t m = 0;
  qrk::ProblemInstance instance;
  std::vector<std::filesystem::path> written;
};

void run_corruption_schedule_figure(FigureContext& ctx, const qrk::NoiseModel& noise) {
  const double beta = effective_beta(1e-3, ctx.m);
  const double q = 0.6;
  const std::int64_t iterations =
      ctx.options.iterations > 0 ? ctx.options.iterations
                                 : default_iterations_qrk(ctx.m, kColumns, q, beta);
  const double err0_sq = ctx.instance.x_star.squaredNorm();

  std::vector<Column> columns;
  for (const auto schedule : {qrk::CorruptionSchedule::time_varying,
                              qrk::CorruptionSchedule::static_support}) {
    const auto corruption = qrk::CorruptionModel::fixed(beta, 10.0, schedule);
    const Aggregate agg =
        run_trials(ctx.instance, noise, corruption, qrk::Algorithm::qrk2, q, iterations,
                   ctx.options.trials, ctx.options.seed, 0, ctx.options.threads);
    const std::string label =
        schedule == qrk::CorruptionSchedule::time_varying ? "err_time_varying" : "err_static";
    columns.push_back({label, to_cells(agg.mean_error_sq)});
  }
  const BoundSeries bound =
      qrk_bound_series(ctx.instance, noise, beta, qrk::Algorithm::qrk2, q, iterations, err0_sq,
                       100, ctx.options.seed, nullptr);
  if (bound.status != "ok") {
    std::cerr << "notice: " << ctx.name << " bound unavailable: " << bound.status << "\n";
  }
  columns.push_back({"bound", bound.values});
  write_figure(ctx.options.out_dir, ctx.name, ctx.name + " (m=" + std::to_string(ctx.m) + ")",
               "squared error", columns, iterations, ctx.written);
}

void run_sweep_figure(FigureContext& ctx, const std::string& param_name,
                      const std::vector<double>& param_values, double fixed_q, double fixed_beta,
                      double fixed_sigma) {
  std::vector<Column> columns;
  std::int64_t iterations = ctx.options.iterations;
  if (iterations <= 0) {
    // size for the slowest member of the sweep
    iterations = 0;
    for (double value : param_values) {
      const double q = param_name == "q" ? value : fixed_q;
      const double beta = effective_beta(param_name == "beta" ? value : fixed_beta, ctx.m);
      iterations = std::max(iterations, default_iterations_qrk(ctx.m, kColumns, q, beta));
    }
  }
  const double err0_sq = ctx.instance.x_star.squaredNorm();
  for (double value : param_values) {
    const double q = param_name == "q" ? value : fixed_q;
    const double beta = effective_beta(param_name == "beta" ? value : fixed_beta, ctx.m);
    const double sigma = param_name == "sigma" ? value : fixed_sigma;
    const auto noise = sigma > 0.0 ? qrk::NoiseModel::gaussian_model(0.0, sigma)
                                   : qrk::NoiseModel::none_model();
    const auto corruption = qrk::CorruptionModel::fixed(beta, 10.0);
    const Aggregate agg =
        run_trials(ctx.instance, noise, corruption, qrk::Algorithm::qrk2, q, iterations,
                   ctx.options.trials, ctx.options.seed, 0, ctx.options.threads);
    const std::string suffix = param_name + trim_number(value);
    columns.push_back({"err_" + suffix, to_cells(agg.mean_error_sq)});
    const BoundSeries bound =
        qrk_bound_series(ctx.instance, noise, beta, qrk::Algorithm::qrk2, q, iterations, err0_sq,
                         100, ctx.options.seed, nullptr);
    if (bound.status != "ok") {
      std::cerr << "notice: " << ctx.name << " " << suffix << " bound unavailable: " << bound.status
                << "\n";
    }
    columns.push_back({"bound_" + suffix, bound.values});
  }
  write_figure(ctx.options.out_dir, ctx.name, ctx.name + " (m=" + std::to_string(ctx.m) + ")",
               "squared error", columns, iterations, ctx.written);
}

void run_detection_figure(FigureContext& ctx) {
  const double beta = effective_beta(1e-3, ctx.m);
  const double q = 0.6;
  const auto corruption = qrk::CorruptionModel::fixed(beta, 10.0);
  const std::int64_t budget = corruption.support_size(ctx.m);
  const double err0_sq = ctx.instance.x_star.squaredNorm();

  std::int64_t iterations = ctx.options.iterations;
  BoundSeries bound = detection_bound_series(
      ctx.instance, beta, qrk::Algorithm::qrk2, q,
      iterations > 0 ? iterations : default_iterations_qrk(ctx.m, kColumns, q, beta), err0_sq,
      10.0, 0.0, 10.0, 100, ctx.options.seed);
  if (iterations <= 0) {
    iterations = default_iterations_qrk(ctx.m, kColumns, q, beta);
    if (bound.rate && bound.rate->assumption_holds()) {
      // long enough for the probability curve to leave zero
      const double needed = 12.0 / (bound.rate->p * bound.rate->varphi);
      iterations = std::max(iterations, clamp_iters(needed, 2000, 200000));
      bound = detection_bound_series(ctx.instance, beta, qrk::Algorithm::qrk2, q, iterations,
                                     err0_sq, 10.0, 0.0, 10.0, 100, ctx.options.seed);
    }
  }
  if (bound.status != "ok") {
    std::cerr << "notice: " << ctx.name << " bound unavailable: " << bound.status << "\n";
  }

  const Aggregate agg = run_trials(ctx.instance, qrk::NoiseModel::none_model(), corruption,
                                   qrk::Algorithm::qrk2, q, iterations, ctx.options.trials,
                                   ctx.options.seed, budget, ctx.options.threads);
  std::vector<Column> columns;
  columns.push_back({"mean_error_sq", to_cells(agg.mean_error_sq)});
  columns.push_back({"detected_fraction", to_cells(agg.mean_detected_fraction)});
  columns.push_back({"full_recovery_freq", to_cells(agg.full_recovery_freq)});
  columns.push_back({"detection_bound", bound.values});
  write_figure(ctx.options.out_dir, ctx.name, ctx.name + " (m=" + std::to_string(ctx.m) + ")",
               "fraction / squared error", columns, iterations, ctx.written);
}

void run_rk_noise_figure(FigureContext& ctx, const std::string& param_name,
                         const std::vector<double>& param_values, double fixed_mu,
                         double fixed_sigma) {
  const std::int64_t iterations = ctx.options.iterations > 0
                                      ? ctx.options.iterations
                                      : default_iterations_rk(ctx.m, kColumns);
  const double err0_sq = ctx.instance.x_star.squaredNorm();
  std::vector<Column> columns;
  for (double value : param_values) {
    const double mu = param_name == "mu" ? value : fixed_mu;
    const double sigma = param_name == "sigma" ? value : fixed_sigma;
    const auto noise = (mu == 0.0 && sigma == 0.0) ? qrk::NoiseModel::none_model()
                                                   : qrk::NoiseModel::gaussian_model(mu, sigma);
    const Aggregate agg =
        run_trials(ctx.instance, noise, qrk::CorruptionModel::none_model(), qrk::Algorithm::rk,
                   0.5, iterations, ctx.options.trials, ctx.options.seed, 0, ctx.options.threads);
    const std::string suffix = param_name + trim_number(value);
    columns.push_back({"err_" + suffix, to_cells(agg.mean_error_sq)});
    columns.push_back({"bound_" + suffix, to_cells(rk_bound_series(ctx.instance, noise, iterations,
                                                                   err0_sq))});
  }
  write_figure(ctx.options.out_dir, ctx.name, ctx.name + " (m=" + std::to_string(ctx.m) + ")",
               "squared error", columns, iterations, ctx.written);
}

}  // namespace

bool is_known_experiment(const std::string& name) {
  return std::find(kExperiments.begin(), kExperiments.end(), name) != kExperiments.end();
}

const std::vector<std::string>& known_experiments() { return kExperiments; }

std::vector<std::filesystem::path> run_experiment(const std::string& name,
                                                  const ExperimentOptions& options) {
  if (!is_known_experiment(name)) {
    throw ConfigError("unknown experiment '" + name + "'");
  }
  if (!(options.scale > 0.0 && options.scale <= 1.0)) {
    throw ConfigError("scale must lie in (0, 1]");
  }
  FigureContext ctx;
  ctx.name = name;
  ctx.options = options;
  ctx.m = static_cast<std::int64_t>(std::ceil(options.scale * static_cast<double>(kBaseRows)));
  if (ctx.m <= kColumns) {
    throw ConfigError("scale too small: m must exceed n=" + std::to_string(kColumns));
  }
  const double x_star_stddev = name == "fig4_detect" ? 10.0 : 1.0;
  ctx.instance = qrk::build_instance(ctx.m, kColumns, options.seed, x_star_stddev);

  if (name == "fig2_left") {
    run_corruption_schedule_figure(ctx, qrk::NoiseModel::none_model());
  } else if (name == "fig2_right") {
    run_corruption_schedule_figure(ctx, qrk::NoiseModel::gaussian_model(0.0, std::sqrt(0.001)));
  } else if (name == "fig3_q") {
    run_sweep_figure(ctx, "q", {0.5, 0.8, 0.9}, 0.0, 5e-5, 0.01);
  } else if (name == "fig3_beta") {
    run_sweep_figure(ctx, "beta", {5e-5, 1e-4, 1e-3}, 0.8, 0.0, 0.01);
  } else if (name == "fig3_sigma") {
    run_sweep_figure(ctx, "sigma", {1e-4, 1e-2, 1e-1}, 0.8, 5e-5, 0.0);
  } else if (name == "fig4_detect") {
    run_detection_figure(ctx);
  } else if (name == "fig6_rk_mu") {
    run_rk_noise_figure(ctx, "mu", {0.0, 0.01, 0.1}, 0.0, 0.01);
  } else if (name == "fig6_rk_sigma") {
    run_rk_noise_figure(ctx, "sigma", {0.0, 0.01, 0.1}, 0.01, 0.0);
  }
  return ctx.written;
}

}  // namespace qrk::cli
