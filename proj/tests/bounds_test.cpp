#include "qrk/bounds.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "qrk/errors.hpp"
#include "qrk/linalg.hpp"
#include "qrk/system_model.hpp"
#include "svd_oracle.hpp"

namespace {

using qrk::Algorithm;
using qrk::Matrix;
using qrk::Vector;

TEST(MinSubsetSigma, IdentityRows) {
  const Matrix eye = Matrix::Identity(3, 3);
  // floor((q - beta) * 3) = 2: every 2-row submatrix of I has sigma_min = 1
  EXPECT_NEAR(qrk::min_subset_sigma_exhaustive(eye, 0.67, 0.0), 1.0, 1e-12);
}

TEST(MinSubsetSigma, DuplicateRowsGiveSingularSubset) {
  Matrix a(3, 2);
  a << 1, 0, 1, 0, 0, 1;
  EXPECT_NEAR(qrk::min_subset_sigma_exhaustive(a, 0.67, 0.0), 0.0, 1e-12);
}

TEST(MinSubsetSigma, EnumerationCap) {
  const auto instance = qrk::build_instance(50, 3, 1);
  EXPECT_THROW(qrk::min_subset_sigma_exhaustive(instance.a, 0.5, 0.0), qrk::TooManySubsetsError);
}

TEST(MinSubsetSigma, ExhaustiveMatchesJacobiOracle) {
  const auto instance = qrk::build_instance(10, 3, 2);
  const double q = 0.6;  // subset size 6
  const double library_value = qrk::min_subset_sigma_exhaustive(instance.a, q, 0.0);

  // independent enumeration: all size-6 subsets, sigma_min via the Jacobi oracle
  double oracle_min = std::numeric_limits<double>::infinity();
  std::vector<int> picks = {0, 1, 2, 3, 4, 5};
  while (true) {
    Matrix sub(6, 3);
    for (int r = 0; r < 6; ++r) sub.row(r) = instance.a.row(picks[static_cast<std::size_t>(r)]);
    oracle_min = std::min(oracle_min, qrk::testing::jacobi_sigma_min(sub));
    int i = 5;
    while (i >= 0 && picks[static_cast<std::size_t>(i)] == 10 - 6 + i) --i;
    if (i < 0) break;
    ++picks[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < 6; ++j) picks[static_cast<std::size_t>(j)] = picks[static_cast<std::size_t>(j - 1)] + 1;
  }
  EXPECT_NEAR(library_value, oracle_min, 1e-8);
}

TEST(MinSubsetSigma, SampledExhaustsSmallFamilies) {
  const auto instance = qrk::build_instance(6, 2, 3);
  qrk::RandomStream rng(4);
  const double exhaustive = qrk::min_subset_sigma_exhaustive(instance.a, 0.5, 0.0);
  const double sampled = qrk::min_subset_sigma_sampled(instance.a, 0.5, 0.0, 20, rng);
  EXPECT_DOUBLE_EQ(sampled, exhaustive);  // C(6,3) = 20 draws cover everything
}

TEST(MinSubsetSigma, SampledIsUpperEstimate) {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto instance = qrk::build_instance(9, 3, seed);
    qrk::RandomStream rng(seed * 7 + 1);
    const double exhaustive = qrk::min_subset_sigma_exhaustive(instance.a, 0.6, 0.0);
    const double sampled = qrk::min_subset_sigma_sampled(instance.a, 0.6, 0.0, 5, rng);
    EXPECT_GE(sampled, exhaustive - 1e-12);
    EXPECT_LE(sampled, instance.spectrum.sigma_max + 1e-12);
  }
}

TEST(MinSubsetSigma, WitnessBoundsExhaustiveFromAbove) {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const auto instance = qrk::build_instance(9, 3, seed);
    const double exhaustive = qrk::min_subset_sigma_exhaustive(instance.a, 0.6, 0.0);
    const double witness = qrk::min_subset_sigma_witness(instance.a, 0.6, 0.0);
    EXPECT_GE(witness, exhaustive - 1e-12);
    EXPECT_LE(witness, instance.spectrum.sigma_max + 1e-12);
  }
}

// Adversarial probes find substantially worse subsets than random draws on
// instances large enough for direction starvation to matter.
TEST(MinSubsetSigma, WitnessBeatsRandomSampling) {
  const auto instance = qrk::build_instance(400, 20, 99);
  qrk::RandomStream rng(100);
  const double sampled = qrk::min_subset_sigma_sampled(instance.a, 0.5, 0.0, 50, rng);
  const double witness = qrk::min_subset_sigma_witness(instance.a, 0.5, 0.0);
  EXPECT_LT(witness, sampled);
}

TEST(RateParams, NoCorruptionReducesToCleanRate) {
  const double sigma_subset = 1.7;
  const auto rate = qrk::rate_params(3.0, sigma_subset, 0.6, 0.0, 500, Algorithm::qrk2);
  EXPECT_DOUBLE_EQ(rate.varphi, sigma_subset * sigma_subset / (0.6 * 500.0));
  EXPECT_DOUBLE_EQ(rate.zeta, 0.0);
  EXPECT_DOUBLE_EQ(rate.p, 1.0);
  EXPECT_TRUE(rate.assumption_holds());
}

TEST(RateParams, SelectionProbabilityPerAlgorithm) {
  EXPECT_DOUBLE_EQ(qrk::rate_params(2.0, 1.0, 0.6, 0.01, 100, Algorithm::qrk1).p, 0.6);
  EXPECT_DOUBLE_EQ(qrk::rate_params(2.0, 1.0, 0.6, 0.01, 100, Algorithm::qrk2).p, 1.0);
}

TEST(RateParams, RejectsBadRegime) {
  EXPECT_THROW(qrk::rate_params(2.0, 1.0, 0.99, 0.05, 100, Algorithm::qrk2),
               qrk::InvalidRegimeError);
  EXPECT_THROW(qrk::rate_params(2.0, 1.0, 0.05, 0.1, 100, Algorithm::qrk2),
               qrk::InvalidRegimeError);
}

// Independent re-evaluation of the two displayed formulas, grouped differently
// and computed in extended precision.
TEST(RateParams, MatchesIndependentEvaluation) {
  const double sigma_max = 5.477;
  const double sigma_subset = 2.46;
  const double q = 0.6;
  const double beta = 0.01;
  const std::int64_t m = 100;
  const auto rate = qrk::rate_params(sigma_max, sigma_subset, q, beta, m, Algorithm::qrk1);

  const long double md = m;
  const long double gap = 1.0L - q - beta;
  const long double t1 =
      static_cast<long double>(sigma_subset) * sigma_subset * (q - beta) / (q * q * md);
  const long double t2 = static_cast<long double>(sigma_max) * sigma_max *
                         (2.0L * std::sqrt(static_cast<long double>(beta) * (1.0L - beta)) / gap +
                          static_cast<long double>(beta) * (1.0L - beta) / (gap * gap)) /
                         (q * md);
  const long double bridge = 2.0L * std::sqrt(static_cast<long double>(beta) * md) / (md * gap) +
                             2.0L * beta * std::sqrt(md * (1.0L - beta)) / (md * gap * gap);
  const long double t3 = static_cast<long double>(sigma_max) * bridge / (q * md);
  const long double varphi_ref = t1 - t2 - t3;
  const long double zeta_ref = static_cast<long double>(sigma_max) * bridge / (q * md) +
                               static_cast<long double>(beta) / (q * md * md * gap * gap);

  EXPECT_NEAR(rate.varphi, static_cast<double>(varphi_ref),
              1e-12 * std::abs(static_cast<double>(varphi_ref)));
  EXPECT_NEAR(rate.zeta, static_cast<double>(zeta_ref),
              1e-12 * std::abs(static_cast<double>(zeta_ref)));
}

TEST(RateParams, RateNonincreasingInBeta) {
  double previous = std::numeric_limits<double>::infinity();
  for (double beta = 0.0; beta < 0.35; beta += 0.01) {
    const auto rate = qrk::rate_params(4.0, 2.0, 0.6, beta, 1000, Algorithm::qrk2);
    EXPECT_LE(rate.varphi, previous + 1e-15);
    previous = rate.varphi;
  }
}

TEST(Horizon, ZeroNoiseStaysZero) {
  qrk::HorizonAccumulator horizon(1.0, 0.01, 0.5);
  for (int k = 0; k < 100; ++k) {
    EXPECT_DOUBLE_EQ(horizon.update(0.0, 0.0), 0.0);
  }
}

TEST(Horizon, SingleTerm) {
  qrk::HorizonAccumulator horizon(0.6, 0.02, 0.3);
  EXPECT_DOUBLE_EQ(horizon.update(0.25, 2.0), 0.25 + 0.3 * 2.0);
}

TEST(Horizon, RecursionMatchesDirectSum) {
  const double p = 0.6;
  const double varphi = 0.045;
  const double zeta = 0.002;
  const std::vector<std::pair<double, double>> contributions = {
      {0.5, 1.0}, {0.1, 4.0}, {0.0, 0.0}, {0.8, 2.5}, {0.3, 9.0}};
  qrk::HorizonAccumulator horizon(p, varphi, zeta);
  double running = 0.0;
  for (std::size_t k = 0; k < contributions.size(); ++k) {
    running = horizon.update(contributions[k].first, contributions[k].second);
    double direct = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      direct += std::pow(1.0 - p * varphi, static_cast<double>(k - j)) *
                (contributions[j].first + zeta * contributions[j].second);
    }
    EXPECT_NEAR(running, direct, 1e-14 * std::max(1.0, direct));
  }
  EXPECT_EQ(horizon.count(), 5);
  EXPECT_EQ(horizon.history()[3].second, 2.5);
}

TEST(RkNoisyBound, NoiselessGeometricDecay) {
  const double err0 = 4.0;
  const double bound = qrk::rk_noisy_bound(0, err0, 100, 100.0, 2.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(bound, (1.0 - 4.0 / 100.0) * err0);
}

TEST(RkNoisyBound, LargeIterationLimit) {
  const double limit = qrk::rk_noisy_bound(10000000, 4.0, 100, 100.0, 2.0, 0.01, 0.02);
  const double expected = 100.0 * (0.01 * 0.01 + 0.02 * 0.02) / (2.0 * 2.0);
  EXPECT_NEAR(limit, expected, 1e-9 * expected);
}

TEST(QrkErrorBound, PureDecayWithoutNoise) {
  const auto rate = qrk::rate_params(3.0, 2.0, 0.6, 0.0, 200, Algorithm::qrk2);
  const double err0 = 7.0;
  EXPECT_DOUBLE_EQ(qrk::qrk_error_bound(0, err0, rate, 0.0),
                   (1.0 - rate.p * rate.varphi) * err0);
  EXPECT_NEAR(qrk::qrk_error_bound(9, err0, rate, 0.0),
              std::pow(1.0 - rate.p * rate.varphi, 10.0) * err0, 1e-15);
}

TEST(QrkErrorBound, FirstIterationIncludesHorizon) {
  const auto rate = qrk::rate_params(3.0, 2.0, 0.6, 0.0, 200, Algorithm::qrk1);
  const double h0 = 0.125;
  EXPECT_DOUBLE_EQ(qrk::qrk_error_bound(0, 1.0, rate, h0),
                   (1.0 - rate.p * rate.varphi) + rate.p * h0);
}

TEST(QrkErrorBound, RejectsNonPositiveRate) {
  auto rate = qrk::rate_params(3.0, 2.0, 0.6, 0.0, 200, Algorithm::qrk2);
  rate.varphi = -0.001;
  EXPECT_THROW(qrk::qrk_error_bound(0, 1.0, rate, 0.0), qrk::AssumptionViolatedError);
  EXPECT_THROW(qrk::noise_model_bound(qrk::NoiseBoundKind::bounded, 0, 1.0, rate, {}),
               qrk::AssumptionViolatedError);
}

TEST(NoiseModelBound, GaussianDelegatesToMoments) {
  const auto rate = qrk::rate_params(4.0, 2.2, 0.7, 0.001, 500, Algorithm::qrk2);
  const double sigma = 0.05;
  qrk::NoiseBoundParams gaussian;
  gaussian.sigma = sigma;
  qrk::NoiseBoundParams folded;
  folded.mu = 0.0;
  folded.sigma = sigma;
  folded.mu_abs = sigma * std::sqrt(2.0 / M_PI);
  folded.sigma_abs = sigma * std::sqrt(1.0 - 2.0 / M_PI);
  for (std::int64_t k : {0, 1, 5, 50, 500}) {
    const double via_gaussian =
        qrk::noise_model_bound(qrk::NoiseBoundKind::gaussian, k, 3.0, rate, gaussian);
    const double via_moments =
        qrk::noise_model_bound(qrk::NoiseBoundKind::moments, k, 3.0, rate, folded);
    EXPECT_EQ(via_gaussian, via_moments);  // same code path, bitwise
  }
}

TEST(NoiseModelBound, ZeroSigmaMatchesNoiselessBound) {
  const auto rate = qrk::rate_params(4.0, 2.2, 0.7, 0.001, 500, Algorithm::qrk2);
  qrk::NoiseBoundParams params;  // all zero
  for (std::int64_t k : {0, 3, 30}) {
    EXPECT_DOUBLE_EQ(qrk::noise_model_bound(qrk::NoiseBoundKind::gaussian, k, 2.0, rate, params),
                     qrk::qrk_error_bound(k, 2.0, rate, 0.0));
  }
}

TEST(NoiseModelBound, BoundedFormula) {
  const auto rate = qrk::rate_params(4.0, 2.2, 0.7, 0.001, 500, Algorithm::qrk1);
  qrk::NoiseBoundParams params;
  params.n_max = 0.05;
  const std::int64_t k = 7;
  const double decay = std::pow(1.0 - rate.p * rate.varphi, 8.0);
  const double expected =
      decay * 2.0 +
      (1.0 + rate.zeta * 500.0 * 500.0) * 0.05 * 0.05 * (1.0 - decay) / rate.varphi;
  EXPECT_NEAR(qrk::noise_model_bound(qrk::NoiseBoundKind::bounded, k, 2.0, rate, params),
              expected, 1e-15 * expected);
}

TEST(DetectionProbability, NoiselessLimitIsOne) {
  const auto rate = qrk::rate_params(3.0, 2.0, 0.6, 0.001, 1000, Algorithm::qrk2);
  EXPECT_DOUBLE_EQ(qrk::detection_probability(10000000, 100.0, rate, 10.0, 0.0, 10.0), 1.0);
}

TEST(DetectionProbability, VacuousBoundClampsToZero) {
  const auto rate = qrk::rate_params(3.0, 2.0, 0.6, 0.001, 1000, Algorithm::qrk2);
  EXPECT_DOUBLE_EQ(qrk::detection_probability(0, 1e9, rate, 10.0, 0.0, 10.0), 0.0);
}

TEST(DetectionProbability, MarginConditionEnforced) {
  const auto rate = qrk::rate_params(2.0, 1.5, 0.5, 0.01, 100, Algorithm::qrk2);
  EXPECT_THROW(qrk::detection_probability(10, 1.0, rate, 1.0, 10.0, 10.0),
               qrk::MarginConditionError);
}

TEST(ResidualQuantileBound, ZeroAtSolutionWithoutNoise) {
  EXPECT_DOUBLE_EQ(qrk::residual_quantile_bound(0.0, 0.0, 100, 0.6, 0.01, 3.0), 0.0);
}

TEST(ResidualQuantileBound, LinearInErrorNorm) {
  const double base = qrk::residual_quantile_bound(1.0, 0.0, 100, 0.6, 0.01, 3.0);
  EXPECT_DOUBLE_EQ(qrk::residual_quantile_bound(2.0, 0.0, 100, 0.6, 0.01, 3.0), 2.0 * base);
}

TEST(ResidualQuantileBound, DominatesEmpiricalQuantile) {
  const auto instance = qrk::build_instance(200, 10, 77);
  const auto corruption = qrk::CorruptionModel::fixed(0.02, 10.0);
  const auto noise = qrk::NoiseModel::gaussian_model(0.0, 0.05);
  qrk::MeasurementSampler sampler(instance, noise, corruption, 5, 6);
  qrk::RandomStream rng(9);
  const double q = 0.6;
  for (int rep = 0; rep < 200; ++rep) {
    Vector v(10);
    for (int j = 0; j < 10; ++j) v(j) = instance.x_star(j) + 2.0 * rng.gaussian();
    const auto meas = sampler.observe(rep);
    const Vector residual = (instance.a * v - meas.b_obs).cwiseAbs();
    const double alpha = qrk::empirical_quantile(
        std::span<const double>(residual.data(), static_cast<std::size_t>(residual.size())), q);
    const double bound = qrk::residual_quantile_bound(
        (v - instance.x_star).norm(), meas.noise.size() ? meas.noise.lpNorm<1>() : 0.0, 200, q,
        corruption.beta, instance.spectrum.sigma_max);
    EXPECT_LE(alpha, bound * (1.0 + 1e-12));
  }
}

}  // namespace
