#include "qrk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qrk/errors.hpp"

namespace qrk {

void normalize_rows_in_place(Matrix& a) {
  for (Index i = 0; i < a.rows(); ++i) {
    const double norm = a.row(i).norm();
    if (norm <= kZeroRowTol) {
      throw ZeroRowError(i);
    }
    a.row(i) /= norm;
  }
}

Matrix normalize_rows(const Matrix& a) {
  Matrix out = a;
  normalize_rows_in_place(out);
  return out;
}

SpectralSummary spectral_summary(const Matrix& a) {
  if (a.rows() < a.cols()) {
    throw std::invalid_argument("spectral_summary: requires rows >= cols");
  }
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("spectral_summary: eigen-solver did not converge");
  }
  const auto& eigenvalues = solver.eigenvalues();  // ascending
  SpectralSummary summary;
  summary.sigma_min = std::sqrt(std::max(0.0, eigenvalues(0)));
  summary.sigma_max = std::sqrt(std::max(0.0, eigenvalues(eigenvalues.size() - 1)));
  summary.frobenius_sq = a.squaredNorm();
  return summary;
}

std::int64_t quantile_rank(double q, std::int64_t count) {
  if (!(q > 0.0) || q > 1.0) {
    throw QuantileUndefinedError("quantile parameter must lie in (0, 1]");
  }
  const auto rank = static_cast<std::int64_t>(std::floor(q * static_cast<double>(count)));
  if (rank < 1) {
    throw QuantileUndefinedError("floor(q * count) is zero; order statistic undefined");
  }
  return rank;
}

double empirical_quantile(std::span<const double> values, double q) {
  const auto count = static_cast<std::int64_t>(values.size());
  const std::int64_t rank = quantile_rank(q, count);
  std::vector<double> scratch(values.begin(), values.end());
  auto nth = scratch.begin() + (rank - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

void project_onto_row_in_place(Vector& x, const ConstRowRef& a_row, double b_entry) {
  const double norm_sq = a_row.squaredNorm();
  if (norm_sq <= kZeroRowTol * kZeroRowTol) {
    throw ZeroRowError(-1);
  }
  const double residual = a_row.dot(x) - b_entry;
  x.noalias() -= (residual / norm_sq) * a_row.transpose();
}

Vector project_onto_row(const Vector& x, const ConstRowRef& a_row, double b_entry) {
  Vector out = x;
  project_onto_row_in_place(out, a_row, b_entry);
  return out;
}

}  // namespace qrk
