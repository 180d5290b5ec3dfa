#include "svd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrk::testing {

std::vector<double> jacobi_singular_values(const qrk::Matrix& a) {
  // rotations act on columns; transpose wide inputs (same singular values)
  Eigen::MatrixXd work = a.rows() >= a.cols() ? Eigen::MatrixXd(a)
                                              : Eigen::MatrixXd(a.transpose());
  const Eigen::Index n = work.cols();
  constexpr int kMaxSweeps = 60;
  constexpr double kTol = 1e-15;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q_col = p + 1; q_col < n; ++q_col) {
        const double alpha = work.col(p).squaredNorm();
        const double beta = work.col(q_col).squaredNorm();
        const double gamma = work.col(p).dot(work.col(q_col));
        if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        // Rutishauser rotation annihilating the (p, q) Gram entry.
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Eigen::VectorXd col_p = work.col(p);
        work.col(p) = c * col_p - s * work.col(q_col);
        work.col(q_col) = s * col_p + c * work.col(q_col);
      }
    }
    if (!rotated) {
      break;
    }
  }

  std::vector<double> singular_values(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    singular_values[static_cast<std::size_t>(j)] = work.col(j).norm();
  }
  std::sort(singular_values.begin(), singular_values.end(), std::greater<>());
  return singular_values;
}

double jacobi_sigma_min(const qrk::Matrix& a) { return jacobi_singular_values(a).back(); }

double jacobi_sigma_max(const qrk::Matrix& a) { return jacobi_singular_values(a).front(); }

}  // namespace qrk::testing
