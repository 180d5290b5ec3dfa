#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qrk/system_model.hpp"
#include "qrk/types.hpp"

namespace qrk {

enum class Algorithm { rk, qrk1, qrk2 };

const char* algorithm_name(Algorithm algorithm);
Algorithm algorithm_from_name(const std::string& name);

struct SolverConfig {
  Algorithm algorithm = Algorithm::rk;
  double q = 0.5;                 // residual quantile (unused for rk)
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;         // per-run master seed (row picks, noise, corruption)
  std::optional<Vector> x0;       // defaults to the zero vector
  // Optional error-threshold stop used by the experiment driver when x_star
  // is known; the core contract is a fixed iteration budget.
  std::optional<double> early_stop_error_sq;
  // When > 0, score the `detect_top_count` largest pre-step residual
  // magnitudes against the true corruption support each iteration.
  std::int64_t detect_top_count = 0;
};

/// Per-iteration instrumentation. Record k describes step k; error_sq is the
/// squared error of the iterate *after* the step, so it lines up with the
/// k-indexed theoretical curves.
struct TraceRecord {
  std::int64_t k = 0;
  double error_sq = std::numeric_limits<double>::quiet_NaN();
  double residual_quantile = std::numeric_limits<double>::quiet_NaN();  // NaN for rk
  std::int64_t selected_row = -1;
  bool accepted = true;
  std::int64_t admissible_count = 0;       // |B_k| (m for rk)
  std::int64_t corrupted_in_admissible = 0;  // |S_k|
  // Oracle-side noise bookkeeping (filled for quantile variants when noise is
  // active): mean of squared noise entries over admissible-and-clean rows,
  // and the l1 norm of the iteration's noise vector.
  double noisediff_clean = 0.0;
  double noise_l1 = 0.0;
  // Detection stats (filled when SolverConfig::detect_top_count > 0). These
  // score the residual of the *pre-step* iterate x^(k) against the support
  // active at iteration k, so record k pairs with the k-th detection bound.
  double detected_fraction = std::numeric_limits<double>::quiet_NaN();
  bool full_recovery = false;
};

/// Iterate, step counter, and the solver's private random stream, plus the
/// scratch buffers the quantile variants reuse across iterations.
class SolverState {
 public:
  SolverState(Vector x0, std::uint64_t row_seed);

  const Vector& x() const { return x_; }
  Vector& x() { return x_; }
  std::int64_t k() const { return k_; }

  /// |residual| entries from the most recent quantile step (qrk1/qrk2 only).
  const Vector& last_residual_abs() const { return residual_abs_; }

  friend TraceRecord rk_step(SolverState&, const Matrix&, const Vector&);
  friend TraceRecord qrk1_step(SolverState&, const Matrix&, const Vector&, double);
  friend TraceRecord qrk2_step(SolverState&, const Matrix&, const Vector&, double);

 private:
  void compute_residual_abs(const Matrix& a, const Vector& b_obs);

  Vector x_;
  std::int64_t k_ = 0;
  RandomStream rng_;
  Vector residual_abs_;
  std::vector<double> quantile_scratch_;
  std::vector<std::int64_t> admissible_;
};

/// One uniformly sampled projection (rows are unit norm, so uniform row
/// choice matches squared-row-norm sampling).
TraceRecord rk_step(SolverState& state, const Matrix& a, const Vector& b_obs);

/// Sample a row uniformly; project only if its residual magnitude is at most
/// the q-quantile of all residual magnitudes.
TraceRecord qrk1_step(SolverState& state, const Matrix& a, const Vector& b_obs, double q);

/// Sample uniformly from the admissible rows (residual magnitude at most the
/// q-quantile) and always project.
TraceRecord qrk2_step(SolverState& state, const Matrix& a, const Vector& b_obs, double q);

struct SolveResult {
  Vector x;
  std::vector<TraceRecord> trace;
};

/// Runs the configured algorithm for config.iterations steps, drawing a fresh
/// observed measurement each iteration. Corruption-aware trace fields are
/// filled using the sampler's knowledge of the support; the solver itself only
/// ever sees b_obs.
SolveResult solve(const ProblemInstance& instance, const NoiseModel& noise,
                  const CorruptionModel& corruption, const SolverConfig& config);

}  // namespace qrk
