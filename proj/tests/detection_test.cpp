#include "qrk/detection.hpp"

#include <gtest/gtest.h>

#include "qrk/solvers.hpp"
#include "qrk/system_model.hpp"

namespace {

using qrk::Vector;

TEST(TopResidualIndices, PicksLargestMagnitude) {
  Vector r(4);
  r << 0.1, 5.0, 0.2, 0.3;
  EXPECT_EQ(qrk::top_residual_indices(r, 1), (std::vector<std::int64_t>{1}));
}

TEST(TopResidualIndices, EmptyCount) {
  Vector r(3);
  r << 1.0, 2.0, 3.0;
  EXPECT_TRUE(qrk::top_residual_indices(r, 0).empty());
}

TEST(TopResidualIndices, TiesResolveToLowestIndex) {
  Vector r(4);
  r << 1.0, 1.0, 1.0, 2.0;
  EXPECT_EQ(qrk::top_residual_indices(r, 2), (std::vector<std::int64_t>{0, 3}));
}

TEST(TopResidualIndices, UsesMagnitudes) {
  Vector r(3);
  r << -9.0, 1.0, 2.0;
  EXPECT_EQ(qrk::top_residual_indices(r, 1), (std::vector<std::int64_t>{0}));
}

TEST(ScoreDetection, PartialOverlap) {
  const std::vector<std::int64_t> truth = {2, 4};
  const std::vector<std::int64_t> suspects = {2, 3};
  const auto score = qrk::score_detection(suspects, truth);
  EXPECT_DOUBLE_EQ(score.detected_fraction, 0.5);
  EXPECT_FALSE(score.full_recovery);
}

TEST(ScoreDetection, EmptyTruthIsVacuouslyRecovered) {
  const std::vector<std::int64_t> suspects = {1};
  const auto score = qrk::score_detection(suspects, {});
  EXPECT_DOUBLE_EQ(score.detected_fraction, 1.0);
  EXPECT_TRUE(score.full_recovery);
}

TEST(ScoreDetection, ExactMatch) {
  const std::vector<std::int64_t> truth = {2, 4};
  const std::vector<std::int64_t> suspects = {2, 4};
  const auto score = qrk::score_detection(suspects, truth);
  EXPECT_DOUBLE_EQ(score.detected_fraction, 1.0);
  EXPECT_TRUE(score.full_recovery);
}

// Once the iterate is within half the smallest corruption magnitude of the
// solution (and there is no noise), the corrupted rows must be exactly the
// largest residual entries.
TEST(Detection, SeparationGuaranteesFullRecovery) {
  const auto instance = qrk::build_instance(400, 10, 55);
  const auto corruption = qrk::CorruptionModel::fixed(0.005, 10.0);  // 2 corrupted rows
  qrk::SolverConfig config;
  config.algorithm = qrk::Algorithm::qrk2;
  config.q = 0.6;
  config.iterations = 4000;
  config.seed = 7;
  config.detect_top_count = corruption.support_size(400);
  const auto result = qrk::solve(instance, qrk::NoiseModel::none_model(), corruption, config);

  const double threshold = (10.0 / 2.0) * (10.0 / 2.0);
  bool condition_reached = false;
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    // error of the pre-step iterate x^(k) is record k-1's post-step error
    if (result.trace[i - 1].error_sq <= threshold) {
      condition_reached = true;
      EXPECT_TRUE(result.trace[i].full_recovery) << "iteration " << i;
      EXPECT_DOUBLE_EQ(result.trace[i].detected_fraction, 1.0);
    }
  }
  EXPECT_TRUE(condition_reached);
}

}  // namespace
