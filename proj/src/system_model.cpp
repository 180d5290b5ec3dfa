#include "qrk/system_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qrk/errors.hpp"
#include "qrk/linalg.hpp"

namespace qrk {

NoiseModel NoiseModel::gaussian_model(double mu, double sigma) {
  if (sigma < 0.0) {
    throw std::invalid_argument("gaussian noise: sigma must be >= 0");
  }
  NoiseModel model;
  model.kind = NoiseKind::gaussian;
  model.mu = mu;
  model.sigma = sigma;
  return model;
}

NoiseModel NoiseModel::uniform_bounded_model(double n_max) {
  if (n_max < 0.0) {
    throw std::invalid_argument("uniform_bounded noise: n_max must be >= 0");
  }
  NoiseModel model;
  model.kind = NoiseKind::uniform_bounded;
  model.n_max = n_max;
  // exact moments of U[-n_max, n_max]
  model.mu = 0.0;
  model.sigma = n_max / std::sqrt(3.0);
  return model;
}

NoiseModel NoiseModel::custom_model(double mu, double sigma, double mu_abs, double sigma_abs,
                                    std::function<double(RandomStream&)> sampler) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(mu_abs) ||
      !std::isfinite(sigma_abs)) {
    throw std::invalid_argument("custom noise: moments must be finite");
  }
  NoiseModel model;
  model.kind = NoiseKind::custom;
  model.mu = mu;
  model.sigma = sigma;
  model.mu_abs = mu_abs;
  model.sigma_abs = sigma_abs;
  model.sampler = std::move(sampler);
  return model;
}

bool NoiseModel::is_zero() const {
  switch (kind) {
    case NoiseKind::none:
      return true;
    case NoiseKind::gaussian:
      return mu == 0.0 && sigma == 0.0;
    case NoiseKind::uniform_bounded:
      return n_max == 0.0;
    case NoiseKind::custom:
      return false;
  }
  return true;
}

double NoiseModel::sample(RandomStream& rng) const {
  switch (kind) {
    case NoiseKind::none:
      return 0.0;
    case NoiseKind::gaussian:
      return mu + sigma * rng.gaussian();
    case NoiseKind::uniform_bounded:
      return n_max * (2.0 * rng.uniform() - 1.0);
    case NoiseKind::custom:
      return sampler(rng);
  }
  return 0.0;
}

FoldedMoments folded_moments(const NoiseModel& model) {
  if (model.kind == NoiseKind::gaussian && model.mu == 0.0) {
    const double mu_abs = model.sigma * std::sqrt(2.0 / M_PI);
    const double sigma_abs = model.sigma * std::sqrt(1.0 - 2.0 / M_PI);
    return FoldedMoments{mu_abs, sigma_abs};
  }
  if (model.kind == NoiseKind::custom) {
    return FoldedMoments{model.mu_abs, model.sigma_abs};
  }
  throw UnsupportedModelError("folded_moments: no closed form for this noise model");
}

CorruptionModel CorruptionModel::fixed(double beta, double magnitude, CorruptionSchedule schedule) {
  if (beta < 0.0 || beta >= 1.0) {
    throw std::invalid_argument("corruption rate beta must lie in [0, 1)");
  }
  CorruptionModel model;
  model.beta = beta;
  model.magnitude = magnitude;
  model.schedule = schedule;
  return model;
}

std::int64_t CorruptionModel::support_size(std::int64_t m) const {
  return static_cast<std::int64_t>(std::floor(beta * static_cast<double>(m)));
}

bool CorruptionModel::warn_degenerate(std::int64_t m) const {
  return beta > 0.0 && support_size(m) == 0;
}

ProblemInstance build_instance(Index m, Index n, std::uint64_t seed, double x_star_stddev) {
  if (!(m > n) || n < 1) {
    throw std::invalid_argument("build_instance: requires m > n >= 1");
  }
  constexpr int kMaxAttempts = 4;  // first try + 3 retries
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RandomStream matrix_rng(derive_seed(seed, StreamPurpose::matrix, static_cast<std::uint64_t>(attempt)));
    Matrix a(m, n);
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) {
        a(i, j) = matrix_rng.gaussian();
      }
    }
    normalize_rows_in_place(a);
    const SpectralSummary spectrum = spectral_summary(a);
    if (spectrum.sigma_min <= 1e-10) {
      continue;
    }
    RandomStream solution_rng(derive_seed(seed, StreamPurpose::solution, static_cast<std::uint64_t>(attempt)));
    Vector x_star(n);
    for (Index j = 0; j < n; ++j) {
      x_star(j) = x_star_stddev * solution_rng.gaussian();
    }
    ProblemInstance instance;
    instance.a = std::move(a);
    instance.x_star = std::move(x_star);
    instance.b = instance.a * instance.x_star;
    instance.seed = seed;
    instance.x_star_stddev = x_star_stddev;
    instance.spectrum = spectrum;
    return instance;
  }
  throw RankDeficientError("build_instance: matrix numerically rank deficient after retries");
}

void validate_instance(const ProblemInstance& instance) {
  const Matrix& a = instance.a;
  if (a.rows() <= a.cols()) {
    throw std::invalid_argument("instance: system must be overdetermined (m > n)");
  }
  for (Index i = 0; i < a.rows(); ++i) {
    if (std::abs(a.row(i).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("instance: row " + std::to_string(i) + " is not unit norm");
    }
  }
  const Vector predicted = a * instance.x_star;
  for (Index i = 0; i < a.rows(); ++i) {
    if (std::abs(predicted(i) - instance.b(i)) > 1e-10) {
      throw std::invalid_argument("instance: system is not consistent at row " + std::to_string(i));
    }
  }
  if (instance.spectrum.sigma_min <= 1e-10) {
    throw RankDeficientError("instance: sigma_min <= 1e-10");
  }
}

double ObservedMeasurement::corruption_min_abs() const {
  double min_abs = std::numeric_limits<double>::infinity();
  for (double value : corruption_values) {
    min_abs = std::min(min_abs, std::abs(value));
  }
  return min_abs;
}

MeasurementSampler::MeasurementSampler(const ProblemInstance& instance, NoiseModel noise,
                                       CorruptionModel corruption, std::uint64_t noise_seed,
                                       std::uint64_t corruption_seed)
    : instance_(instance),
      noise_(std::move(noise)),
      corruption_(std::move(corruption)),
      noise_seed_(noise_seed),
      corruption_seed_(corruption_seed),
      corrupted_count_(corruption_.support_size(instance.rows())),
      support_sampler_(instance.rows()) {}

void MeasurementSampler::observe(std::int64_t k, ObservedMeasurement& out) {
  const Index m = instance_.rows();
  out.k = k;
  out.b_obs = instance_.b;

  // Under the static schedule both perturbations are the k=0 draw, replayed.
  const std::uint64_t draw_index =
      corruption_.schedule == CorruptionSchedule::static_support ? 0 : static_cast<std::uint64_t>(k);

  if (!noise_.is_zero()) {
    RandomStream noise_rng(derive_seed(noise_seed_, StreamPurpose::noise, draw_index));
    out.noise.resize(m);
    for (Index i = 0; i < m; ++i) {
      out.noise(i) = noise_.sample(noise_rng);
    }
    out.b_obs += out.noise;
  } else {
    out.noise.resize(0);
  }

  if (corrupted_count_ > 0) {
    RandomStream corruption_rng(derive_seed(corruption_seed_, StreamPurpose::corruption, draw_index));
    support_sampler_.sample(corruption_rng, corrupted_count_, out.corruption_support);
    out.corruption_values.resize(out.corruption_support.size());
    for (std::size_t idx = 0; idx < out.corruption_support.size(); ++idx) {
      const double value = corruption_.magnitude_sampler ? corruption_.magnitude_sampler(corruption_rng)
                                                         : corruption_.magnitude;
      out.corruption_values[idx] = value;
      out.b_obs(out.corruption_support[idx]) += value;
    }
  } else {
    out.corruption_support.clear();
    out.corruption_values.clear();
  }
}

ObservedMeasurement MeasurementSampler::observe(std::int64_t k) {
  ObservedMeasurement out;
  observe(k, out);
  return out;
}

ObservedMeasurement sample_measurement(const ProblemInstance& instance, const NoiseModel& noise,
                                       const CorruptionModel& corruption, std::int64_t k,
                                       std::uint64_t noise_seed, std::uint64_t corruption_seed) {
  MeasurementSampler sampler(instance, noise, corruption, noise_seed, corruption_seed);
  return sampler.observe(k);
}

}  // namespace qrk
