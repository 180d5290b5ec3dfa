#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrk {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix row has (numerically) zero Euclidean norm.
class ZeroRowError : public Error {
 public:
  explicit ZeroRowError(std::int64_t row)
      : Error("row " + std::to_string(row) + " has zero norm"), row_(row) {}
  std::int64_t row() const { return row_; }

 private:
  std::int64_t row_;
};

/// floor(q * count) == 0: the order statistic does not exist.
class QuantileUndefinedError : public Error {
 public:
  using Error::Error;
};

/// The iterative eigen-solver failed to converge.
class ConvergenceFailureError : public Error {
 public:
  using Error::Error;
};

/// Generated matrix is (numerically) rank deficient.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// The noise model has no closed-form folded moments.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// The (q, beta) pair lies outside the admissible regime beta < q < 1 - beta.
class InvalidRegimeError : public Error {
 public:
  using Error::Error;
};

/// Row-subset enumeration would exceed the configured cap.
class TooManySubsetsError : public Error {
 public:
  using Error::Error;
};

/// The rate parameter is not positive, so the bound is undefined.
class AssumptionViolatedError : public Error {
 public:
  using Error::Error;
};

/// The detection bound's noise-margin condition does not hold.
class MarginConditionError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared where one must not (solver iterates).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrk
