#pragma once

#include <Eigen/Dense>

namespace qrk {

// Row-major storage: the solvers are row-action methods, so iterating rows of
// A must be contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using ConstRowRef = Eigen::Ref<const Eigen::RowVectorXd>;

/// Extreme singular values and squared Frobenius norm of a matrix.
struct SpectralSummary {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double frobenius_sq = 0.0;
};

}  // namespace qrk
