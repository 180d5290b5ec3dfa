#pragma once

#include <cstdint>
#include <span>

#include "qrk/types.hpp"

namespace qrk {

inline constexpr double kZeroRowTol = 1e-14;

/// Returns a copy of `a` with every row scaled to unit Euclidean norm.
/// Throws ZeroRowError if a row has norm <= kZeroRowTol.
Matrix normalize_rows(const Matrix& a);
void normalize_rows_in_place(Matrix& a);

/// Extreme singular values (to ~1e-10 relative) and squared Frobenius norm.
/// Computed from the n x n Gram matrix A^T A (requires rows >= cols).
/// Throws ConvergenceFailureError if the eigen-solver fails.
SpectralSummary spectral_summary(const Matrix& a);

/// floor(q * count) as the 1-based rank of the order statistic.
/// Throws QuantileUndefinedError when the rank is zero.
std::int64_t quantile_rank(double q, std::int64_t count);

/// The floor(q*|values|)-th smallest element (1-based, multiplicity counted).
/// Exact order statistic, no interpolation.
double empirical_quantile(std::span<const double> values, double q);

/// Orthogonal projection of x onto the hyperplane {y : <a_row, y> = b_entry}.
/// Throws ZeroRowError if the row norm is <= kZeroRowTol.
Vector project_onto_row(const Vector& x, const ConstRowRef& a_row, double b_entry);
void project_onto_row_in_place(Vector& x, const ConstRowRef& a_row, double b_entry);

}  // namespace qrk
