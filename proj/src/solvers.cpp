#include "qrk/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <span>
#include <stdexcept>
#include <string>

#include "qrk/detection.hpp"
#include "qrk/errors.hpp"
#include "qrk/linalg.hpp"

namespace qrk {

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::rk:
      return "rk";
    case Algorithm::qrk1:
      return "qrk1";
    case Algorithm::qrk2:
      return "qrk2";
  }
  return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "rk") return Algorithm::rk;
  if (name == "qrk1") return Algorithm::qrk1;
  if (name == "qrk2") return Algorithm::qrk2;
  throw std::invalid_argument("unknown algorithm: " + name);
}

SolverState::SolverState(Vector x0, std::uint64_t row_seed)
    : x_(std::move(x0)), rng_(row_seed) {}

void SolverState::compute_residual_abs(const Matrix& a, const Vector& b_obs) {
  residual_abs_.resize(a.rows());
  residual_abs_.noalias() = a * x_;
  residual_abs_ -= b_obs;
  residual_abs_ = residual_abs_.cwiseAbs();
}

TraceRecord rk_step(SolverState& state, const Matrix& a, const Vector& b_obs) {
  TraceRecord record;
  record.k = state.k_;
  const std::int64_t row = state.rng_.uniform_index(0, a.rows() - 1);
  project_onto_row_in_place(state.x_, a.row(row), b_obs(row));
  record.selected_row = row;
  record.accepted = true;
  record.admissible_count = a.rows();
  ++state.k_;
  return record;
}

TraceRecord qrk1_step(SolverState& state, const Matrix& a, const Vector& b_obs, double q) {
  TraceRecord record;
  record.k = state.k_;
  state.compute_residual_abs(a, b_obs);
  const std::span<const double> residuals(state.residual_abs_.data(),
                                          static_cast<std::size_t>(a.rows()));
  // nth_element scratch lives in the state so steady-state steps do not allocate
  state.quantile_scratch_.assign(residuals.begin(), residuals.end());
  const std::int64_t rank = quantile_rank(q, a.rows());
  auto nth = state.quantile_scratch_.begin() + (rank - 1);
  std::nth_element(state.quantile_scratch_.begin(), nth, state.quantile_scratch_.end());
  const double alpha = *nth;

  const std::int64_t row = state.rng_.uniform_index(0, a.rows() - 1);
  record.selected_row = row;
  record.residual_quantile = alpha;
  record.admissible_count =
      static_cast<std::int64_t>(std::count_if(residuals.begin(), residuals.end(),
                                              [alpha](double r) { return r <= alpha; }));
  if (state.residual_abs_(row) <= alpha) {
    project_onto_row_in_place(state.x_, a.row(row), b_obs(row));
    record.accepted = true;
  } else {
    record.accepted = false;  // iterate untouched
  }
  ++state.k_;
  return record;
}

TraceRecord qrk2_step(SolverState& state, const Matrix& a, const Vector& b_obs, double q) {
  TraceRecord record;
  record.k = state.k_;
  state.compute_residual_abs(a, b_obs);
  const std::span<const double> residuals(state.residual_abs_.data(),
                                          static_cast<std::size_t>(a.rows()));
  state.quantile_scratch_.assign(residuals.begin(), residuals.end());
  const std::int64_t rank = quantile_rank(q, a.rows());
  auto nth = state.quantile_scratch_.begin() + (rank - 1);
  std::nth_element(state.quantile_scratch_.begin(), nth, state.quantile_scratch_.end());
  const double alpha = *nth;

  state.admissible_.clear();
  for (Index i = 0; i < a.rows(); ++i) {
    if (state.residual_abs_(i) <= alpha) {
      state.admissible_.push_back(i);
    }
  }
  const std::int64_t pick =
      state.rng_.uniform_index(0, static_cast<std::int64_t>(state.admissible_.size()) - 1);
  const std::int64_t row = state.admissible_[static_cast<std::size_t>(pick)];
  project_onto_row_in_place(state.x_, a.row(row), b_obs(row));
  record.selected_row = row;
  record.residual_quantile = alpha;
  record.admissible_count = static_cast<std::int64_t>(state.admissible_.size());
  record.accepted = true;
  ++state.k_;
  return record;
}

namespace {

// |S_k| and the clean-row mean of squared noise entries, from the oracle's
// knowledge of the corruption support.
void fill_oracle_fields(TraceRecord& record, const SolverState& state,
                        const ObservedMeasurement& meas, std::int64_t m) {
  const Vector& residual_abs = state.last_residual_abs();
  const bool have_residual = residual_abs.size() == m && std::isfinite(record.residual_quantile);

  std::int64_t corrupted_admissible = 0;
  if (have_residual) {
    for (std::int64_t i : meas.corruption_support) {
      if (residual_abs(i) <= record.residual_quantile) {
        ++corrupted_admissible;
      }
    }
  } else {
    corrupted_admissible = static_cast<std::int64_t>(meas.corruption_support.size());
  }
  record.corrupted_in_admissible = corrupted_admissible;

  if (meas.noise.size() == m) {
    record.noise_l1 = meas.noise.lpNorm<1>();
    if (have_residual) {
      double sum_sq = 0.0;
      std::int64_t clean_admissible = 0;
      std::size_t support_pos = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        while (support_pos < meas.corruption_support.size() &&
               meas.corruption_support[support_pos] < i) {
          ++support_pos;
        }
        const bool corrupted = support_pos < meas.corruption_support.size() &&
                               meas.corruption_support[support_pos] == i;
        if (!corrupted && residual_abs(i) <= record.residual_quantile) {
          sum_sq += meas.noise(i) * meas.noise(i);
          ++clean_admissible;
        }
      }
      record.noisediff_clean = clean_admissible > 0 ? sum_sq / static_cast<double>(clean_admissible) : 0.0;
    }
  }
}

}  // namespace

SolveResult solve(const ProblemInstance& instance, const NoiseModel& noise,
                  const CorruptionModel& corruption, const SolverConfig& config) {
  const Index m = instance.rows();
  const Index n = instance.cols();
  Vector x0 = config.x0.value_or(Vector::Zero(n));
  if (x0.size() != n) {
    throw std::invalid_argument("solve: x0 has wrong dimension");
  }
  if (config.algorithm != Algorithm::rk) {
    quantile_rank(config.q, m);  // throws when floor(q*m) == 0
    if (!(corruption.beta < config.q && config.q < 1.0 - corruption.beta)) {
      std::cerr << "warning: quantile q=" << config.q << " outside (beta, 1-beta) for beta="
                << corruption.beta << "; convergence guarantees do not apply\n";
    }
  }
  if (corruption.warn_degenerate(m)) {
    std::cerr << "warning: floor(beta*m) = 0; corruption model is inactive\n";
  }

  MeasurementSampler sampler(instance, noise, corruption,
                             derive_seed(config.seed, StreamPurpose::noise),
                             derive_seed(config.seed, StreamPurpose::corruption));
  SolverState state(std::move(x0), derive_seed(config.seed, StreamPurpose::row_sampling));

  SolveResult result;
  result.trace.reserve(static_cast<std::size_t>(config.iterations));
  ObservedMeasurement meas;
  Vector detect_residual;
  for (std::int64_t k = 0; k < config.iterations; ++k) {
    sampler.observe(k, meas);
    if (config.detect_top_count > 0 && config.algorithm == Algorithm::rk) {
      // quantile variants compute this inside the step; plain rk does not
      detect_residual.noalias() = instance.a * state.x();
      detect_residual -= meas.b_obs;
      detect_residual = detect_residual.cwiseAbs();
    }
    TraceRecord record;
    switch (config.algorithm) {
      case Algorithm::rk:
        record = rk_step(state, instance.a, meas.b_obs);
        break;
      case Algorithm::qrk1:
        record = qrk1_step(state, instance.a, meas.b_obs, config.q);
        break;
      case Algorithm::qrk2:
        record = qrk2_step(state, instance.a, meas.b_obs, config.q);
        break;
    }
    if (config.detect_top_count > 0) {
      const Vector& residual_abs =
          config.algorithm == Algorithm::rk ? detect_residual : state.last_residual_abs();
      const auto suspects = top_residual_indices(residual_abs, config.detect_top_count);
      const DetectionScore score = score_detection(suspects, meas.corruption_support);
      record.detected_fraction = score.detected_fraction;
      record.full_recovery = score.full_recovery;
    }
    record.error_sq = (state.x() - instance.x_star).squaredNorm();
    if (!std::isfinite(record.error_sq)) {
      throw NumericalError("solve: non-finite iterate at iteration " + std::to_string(k) +
                           " (algorithm " + algorithm_name(config.algorithm) + ")");
    }
    if (config.algorithm != Algorithm::rk) {
      fill_oracle_fields(record, state, meas, m);
    } else {
      record.corrupted_in_admissible = static_cast<std::int64_t>(meas.corruption_support.size());
    }
    result.trace.push_back(record);
    if (config.early_stop_error_sq && record.error_sq < *config.early_stop_error_sq) {
      break;
    }
  }
  result.x = state.x();
  return result;
}

}  // namespace qrk
