#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "csv.hpp"
#include "experiment.hpp"
#include "qrk/bounds.hpp"
#include "qrk/errors.hpp"

namespace qrk::cli {

namespace {

qrk::ProblemInstance obtain_instance(const ExperimentConfig& config) {
  if (!config.instance_file.empty()) {
    return qrk::load_instance(config.instance_file);
  }
  return qrk::build_instance(config.m, config.n, config.instance_seed, config.x_star_stddev);
}

std::string noise_kind_name(const qrk::NoiseModel& noise) {
  switch (noise.kind) {
    case qrk::NoiseKind::none: return "none";
    case qrk::NoiseKind::gaussian: return "gaussian";
    case qrk::NoiseKind::uniform_bounded: return "uniform_bounded";
    case qrk::NoiseKind::custom: return "custom";
  }
  return "?";
}

}  // namespace

int cmd_generate(const ExperimentConfig& config) {
  const qrk::ProblemInstance instance = obtain_instance(config);
  qrk::validate_instance(instance);
  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path path = std::filesystem::path(config.out_dir) / "instance.qrk";
  std::ostringstream extra;
  extra << "{\"beta\":" << format_double(config.corruption.beta) << ",\"noise_kind\":\""
        << noise_kind_name(config.noise) << "\"}";
  qrk::save_instance(instance, path, extra.str());
  std::cout << "wrote " << path.string() << " and sidecar\n";
  return 0;
}

int cmd_solve(const ExperimentConfig& config) {
  const qrk::ProblemInstance instance = obtain_instance(config);
  const std::int64_t detect_count =
      config.detect ? config.corruption.support_size(instance.rows()) : 0;

  Aggregate agg;
  if (config.early_stop_error_sq && config.trials == 1) {
    qrk::SolverConfig solver_config;
    solver_config.algorithm = config.algorithm;
    solver_config.q = config.q;
    solver_config.iterations = config.iterations;
    solver_config.seed = qrk::derive_seed(config.master_seed, qrk::StreamPurpose::trial, 0);
    solver_config.early_stop_error_sq = config.early_stop_error_sq;
    solver_config.detect_top_count = detect_count;
    const qrk::SolveResult result = qrk::solve(instance, config.noise, config.corruption,
                                               solver_config);
    agg.trials = 1;
    for (const qrk::TraceRecord& record : result.trace) {
      agg.mean_error_sq.push_back(record.error_sq);
      if (config.algorithm != qrk::Algorithm::rk) {
        agg.mean_quantile.push_back(record.residual_quantile);
        agg.accept_rate.push_back(record.accepted ? 1.0 : 0.0);
      }
      if (detect_count > 0) {
        agg.mean_detected_fraction.push_back(record.detected_fraction);
        agg.full_recovery_freq.push_back(record.full_recovery ? 1.0 : 0.0);
      }
      if (!config.noise.is_zero() && config.algorithm != qrk::Algorithm::rk) {
        agg.mean_noisediff.push_back(record.noisediff_clean);
        agg.mean_noise_l1_sq.push_back(record.noise_l1 * record.noise_l1);
      }
    }
  } else {
    if (config.early_stop_error_sq) {
      std::cerr << "warning: early stop is only applied for single-trial runs\n";
    }
    agg = run_trials(instance, config.noise, config.corruption, config.algorithm, config.q,
                     config.iterations, config.trials, config.master_seed, detect_count,
                     config.threads);
  }
  const auto recorded = static_cast<std::int64_t>(agg.mean_error_sq.size());

  std::vector<std::optional<double>> bound_cells(static_cast<std::size_t>(recorded), std::nullopt);
  if (config.bound_enabled && recorded > 0) {
    const double err0_sq = instance.x_star.squaredNorm();
    if (config.algorithm == qrk::Algorithm::rk) {
      const auto values = rk_bound_series(instance, config.noise, recorded, err0_sq);
      for (std::size_t i = 0; i < values.size(); ++i) {
        bound_cells[i] = values[i];
      }
    } else {
      const BoundSeries bound = qrk_bound_series(
          instance, config.noise, config.corruption.beta, config.algorithm, config.q, recorded,
          err0_sq, config.num_subsets, config.master_seed,
          config.realized_noisediff ? &agg : nullptr);
      if (bound.status != "ok") {
        std::cerr << "warning: bound column omitted: " << bound.status << "\n";
      } else {
        bound_cells = bound.values;
      }
    }
  }

  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path path = std::filesystem::path(config.out_dir) / "trace.csv";
  CsvWriter csv(path, {"iter", "mean_error_sq", "bound", "quantile", "accept_rate",
                       "detected_fraction"});
  for (std::int64_t k = 0; k < recorded; ++k) {
    const auto i = static_cast<std::size_t>(k);
    std::vector<std::optional<double>> row(6, std::nullopt);
    row[0] = static_cast<double>(k);
    row[1] = agg.mean_error_sq[i];
    row[2] = bound_cells[i];
    if (i < agg.mean_quantile.size()) row[3] = agg.mean_quantile[i];
    row[4] = i < agg.accept_rate.size() ? agg.accept_rate[i] : 1.0;
    if (i < agg.mean_detected_fraction.size()) row[5] = agg.mean_detected_fraction[i];
    csv.write_row(row);
  }
  csv.close();
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_bound(const ExperimentConfig& config) {
  if (config.algorithm == qrk::Algorithm::rk) {
    throw ConfigError("bound tabulation applies to the quantile algorithms (qrk1/qrk2)");
  }
  const qrk::ProblemInstance instance = obtain_instance(config);
  const std::int64_t m = instance.rows();
  const double err0_sq = instance.x_star.squaredNorm();
  const double beta = config.corruption.beta;

  std::string status = "ok";
  std::optional<qrk::RateParams> rate;
  qrk::RandomStream subset_rng(
      qrk::derive_seed(config.master_seed, qrk::StreamPurpose::subset_sampling));
  try {
    const double sigma_subset = qrk::min_subset_sigma_sampled(instance.a, config.q, beta,
                                                              config.num_subsets, subset_rng);
    rate = qrk::rate_params(instance.spectrum.sigma_max, sigma_subset, config.q, beta, m,
                            config.algorithm);
    if (!rate->assumption_holds()) {
      status = "rate_not_positive";
    }
  } catch (const qrk::InvalidRegimeError& err) {
    status = std::string("invalid_regime: ") + err.what();
  }

  // Expected horizon increments; empty when the model has no usable moments.
  std::optional<std::pair<double, double>> increment;
  if (config.noise.is_zero()) {
    increment = std::make_pair(0.0, 0.0);
  } else if (config.noise.kind == qrk::NoiseKind::gaussian && config.noise.mu == 0.0) {
    const qrk::FoldedMoments folded = qrk::folded_moments(config.noise);
    const double md = static_cast<double>(m);
    increment = std::make_pair(
        config.noise.sigma * config.noise.sigma,
        md * md * folded.mu_abs * folded.mu_abs + md * folded.sigma_abs * folded.sigma_abs);
  } else if (status == "ok") {
    status = "no_expected_noise_moments";
  }

  const bool have_curves = rate && rate->assumption_holds();
  const double c_min = std::abs(config.corruption.magnitude);
  const bool detect_applicable = have_curves && config.corruption.support_size(m) >= 1 &&
                                 config.noise.kind != qrk::NoiseKind::gaussian &&
                                 config.noise.kind != qrk::NoiseKind::custom;
  const double n_max = config.noise.kind == qrk::NoiseKind::uniform_bounded ? config.noise.n_max
                                                                            : 0.0;

  qrk::NoiseBoundParams bound_noise;
  bool have_moments = false;
  bool have_bounded = false;
  bool have_gaussian = false;
  if (config.noise.is_zero()) {
    have_moments = have_bounded = have_gaussian = true;  // all reduce to pure decay
  } else if (config.noise.kind == qrk::NoiseKind::uniform_bounded) {
    bound_noise.n_max = config.noise.n_max;
    have_bounded = true;
  } else if (config.noise.kind == qrk::NoiseKind::gaussian && config.noise.mu == 0.0) {
    const qrk::FoldedMoments folded = qrk::folded_moments(config.noise);
    bound_noise.mu = 0.0;
    bound_noise.sigma = config.noise.sigma;
    bound_noise.mu_abs = folded.mu_abs;
    bound_noise.sigma_abs = folded.sigma_abs;
    have_moments = have_gaussian = true;
  }

  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path path = std::filesystem::path(config.out_dir) / "bounds.csv";
  CsvWriter csv(path, {"k", "varphi", "zeta", "p", "H_k", "main_bound", "cor_a", "cor_b", "cor_c",
                       "detect_prob", "status"});
  std::optional<qrk::HorizonAccumulator> horizon;
  if (have_curves && increment) {
    horizon.emplace(rate->p, rate->varphi, rate->zeta);
  }
  bool margin_failed = false;
  for (std::int64_t k = 0; k < config.iterations; ++k) {
    std::vector<std::string> row(11);
    row[0] = format_double(static_cast<double>(k));
    if (rate) {
      row[1] = format_double(rate->varphi);
      row[2] = format_double(rate->zeta);
      row[3] = format_double(rate->p);
    }
    if (horizon) {
      const double h_k = horizon->update(increment->first, increment->second);
      row[4] = format_double(h_k);
      row[5] = format_double(qrk::qrk_error_bound(k, err0_sq, *rate, h_k));
    }
    if (have_curves) {
      if (have_bounded) {
        row[6] = format_double(
            qrk::noise_model_bound(qrk::NoiseBoundKind::bounded, k, err0_sq, *rate, bound_noise));
      }
      if (have_moments) {
        row[7] = format_double(
            qrk::noise_model_bound(qrk::NoiseBoundKind::moments, k, err0_sq, *rate, bound_noise));
      }
      if (have_gaussian) {
        row[8] = format_double(
            qrk::noise_model_bound(qrk::NoiseBoundKind::gaussian, k, err0_sq, *rate, bound_noise));
      }
      if (detect_applicable && c_min > 0.0) {
        try {
          row[9] = format_double(qrk::detection_probability(k, err0_sq, *rate, c_min, n_max,
                                                            config.detection_margin));
        } catch (const qrk::MarginConditionError&) {
          margin_failed = true;
        }
      }
    }
    row[10] = status + (margin_failed ? ";margin_condition_failed" : "");
    csv.write_text_row(row);
  }
  csv.close();
  if (status != "ok") {
    std::cerr << "warning: " << status << "\n";
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_detect(const ExperimentConfig& config) {
  if (config.algorithm == qrk::Algorithm::rk && config.corruption.beta > 0.0) {
    std::cerr << "warning: detection on plain rk recomputes the residual each iteration\n";
  }
  const qrk::ProblemInstance instance = obtain_instance(config);
  const std::int64_t budget = config.corruption.support_size(instance.rows());
  if (budget < 1) {
    throw ConfigError("detection requires floor(beta*m) >= 1");
  }
  const Aggregate agg =
      run_trials(instance, config.noise, config.corruption, config.algorithm, config.q,
                 config.iterations, config.trials, config.master_seed, budget, config.threads);

  const double err0_sq = instance.x_star.squaredNorm();
  const double n_max = config.noise.kind == qrk::NoiseKind::uniform_bounded ? config.noise.n_max
                                                                            : 0.0;
  BoundSeries bound;
  if (config.noise.is_zero() || config.noise.kind == qrk::NoiseKind::uniform_bounded) {
    bound = detection_bound_series(instance, config.corruption.beta, config.algorithm, config.q,
                                   config.iterations, err0_sq,
                                   std::abs(config.corruption.magnitude), n_max,
                                   config.detection_margin, config.num_subsets,
                                   config.master_seed);
  } else {
    bound.status = "noise model has no finite bound; detection probability omitted";
    bound.values.assign(static_cast<std::size_t>(config.iterations), std::nullopt);
  }
  if (bound.status != "ok") {
    std::cerr << "warning: " << bound.status << "\n";
  }

  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path path = std::filesystem::path(config.out_dir) / "detect.csv";
  CsvWriter csv(path, {"iter", "mean_error_sq", "detected_fraction", "full_recovery_freq",
                       "detection_bound"});
  for (std::size_t i = 0; i < agg.mean_error_sq.size(); ++i) {
    std::vector<std::optional<double>> row(5, std::nullopt);
    row[0] = static_cast<double>(i);
    row[1] = agg.mean_error_sq[i];
    row[2] = agg.mean_detected_fraction[i];
    row[3] = agg.full_recovery_freq[i];
    if (i < bound.values.size()) row[4] = bound.values[i];
    csv.write_row(row);
  }
  csv.close();
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace qrk::cli
