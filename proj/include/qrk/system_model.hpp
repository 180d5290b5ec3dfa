#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "qrk/random.hpp"
#include "qrk/types.hpp"

namespace qrk {

enum class NoiseKind { none, gaussian, uniform_bounded, custom };

/// Per-entry noise model for the observed measurements. Entries are drawn
/// i.i.d. in every iteration in which noise is (re)sampled.
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double mu = 0.0;          // mean (gaussian/custom)
  double sigma = 0.0;       // standard deviation (gaussian/custom)
  double n_max = 0.0;       // half-width of uniform_bounded support
  double mu_abs = 0.0;      // mean of |entry| (custom)
  double sigma_abs = 0.0;   // standard deviation of |entry| (custom)
  std::function<double(RandomStream&)> sampler;  // custom draws

  static NoiseModel none_model() { return NoiseModel{}; }
  static NoiseModel gaussian_model(double mu, double sigma);
  static NoiseModel uniform_bounded_model(double n_max);
  static NoiseModel custom_model(double mu, double sigma, double mu_abs, double sigma_abs,
                                 std::function<double(RandomStream&)> sampler);

  bool is_zero() const;
  double sample(RandomStream& rng) const;
};

struct FoldedMoments {
  double mu_abs = 0.0;
  double sigma_abs = 0.0;
};

/// Mean and standard deviation of |entry| for the noise model. Closed form
/// for zero-mean gaussian; echoed for custom; UnsupportedModelError otherwise.
FoldedMoments folded_moments(const NoiseModel& model);

enum class CorruptionSchedule { static_support, time_varying };

/// Sparse corruption model: floor(beta*m) entries get a (large) additive
/// offset. Under the static schedule support and values are drawn once and
/// reused every iteration (together with the noise draw); under time_varying
/// they are redrawn each iteration.
struct CorruptionModel {
  double beta = 0.0;
  double magnitude = 0.0;
  std::function<double(RandomStream&)> magnitude_sampler;  // optional override
  CorruptionSchedule schedule = CorruptionSchedule::time_varying;

  static CorruptionModel none_model() { return CorruptionModel{}; }
  static CorruptionModel fixed(double beta, double magnitude,
                               CorruptionSchedule schedule = CorruptionSchedule::time_varying);

  /// floor(beta*m); a positive beta that floors to zero corrupts nothing
  /// (the degenerate case is reported through warn_degenerate).
  std::int64_t support_size(std::int64_t m) const;
  bool warn_degenerate(std::int64_t m) const;
};

/// A consistent overdetermined system: row-normalized A, planted solution
/// x_star, and clean measurements b = A * x_star.
struct ProblemInstance {
  Matrix a;
  Vector x_star;
  Vector b;
  std::uint64_t seed = 0;
  double x_star_stddev = 1.0;
  SpectralSummary spectrum;  // of a

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

/// Builds an instance with i.i.d. standard-normal matrix entries (then row
/// normalization) and x_star entries drawn N(0, x_star_stddev^2).
/// Deterministic in `seed`. Retries with derived seeds up to 3 times if the
/// matrix comes out numerically rank-deficient, then throws RankDeficientError.
ProblemInstance build_instance(Index m, Index n, std::uint64_t seed, double x_star_stddev = 1.0);

/// Checks the instance invariants (unit rows, consistency, full column rank).
/// Throws on violation.
void validate_instance(const ProblemInstance& instance);

/// One observed measurement vector b_obs = b + noise + corruption.
struct ObservedMeasurement {
  Vector b_obs;
  Vector noise;  // empty when the noise model is identically zero
  std::vector<std::int64_t> corruption_support;  // sorted ascending
  std::vector<double> corruption_values;         // parallel to support
  std::int64_t k = 0;

  /// min |c_i| over the support; +inf when the support is empty.
  double corruption_min_abs() const;
};

/// Draws observed measurements for a fixed instance. observe(k) is a pure
/// function of (instance, models, seeds, k): per-iteration streams are derived
/// from the seeds and k, so trials can replay any iteration independently.
class MeasurementSampler {
 public:
  MeasurementSampler(const ProblemInstance& instance, NoiseModel noise, CorruptionModel corruption,
                     std::uint64_t noise_seed, std::uint64_t corruption_seed);

  void observe(std::int64_t k, ObservedMeasurement& out);
  ObservedMeasurement observe(std::int64_t k);

  std::int64_t corrupted_count() const { return corrupted_count_; }
  const NoiseModel& noise_model() const { return noise_; }
  const CorruptionModel& corruption_model() const { return corruption_; }

 private:
  const ProblemInstance& instance_;
  NoiseModel noise_;
  CorruptionModel corruption_;
  std::uint64_t noise_seed_ = 0;
  std::uint64_t corruption_seed_ = 0;
  std::int64_t corrupted_count_ = 0;
  SubsetSampler support_sampler_;
};

/// One-shot convenience wrapper around MeasurementSampler.
ObservedMeasurement sample_measurement(const ProblemInstance& instance, const NoiseModel& noise,
                                       const CorruptionModel& corruption, std::int64_t k,
                                       std::uint64_t noise_seed, std::uint64_t corruption_seed);

// --- instance serialization (binary container + JSON sidecar) ---

/// Writes the instance to `path` (binary, little-endian, layout documented in
/// the README) and metadata to `path` with extension replaced by ".json".
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path,
                   const std::string& extra_metadata_json = "{}");

ProblemInstance load_instance(const std::filesystem::path& path);

}  // namespace qrk
