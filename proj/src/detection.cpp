#include "qrk/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qrk {

std::vector<std::int64_t> top_residual_indices(const Vector& residual, std::int64_t count) {
  const std::int64_t m = residual.size();
  if (count < 0 || count > m) {
    throw std::invalid_argument("top_residual_indices: count out of range");
  }
  if (count == 0) {
    return {};
  }
  std::vector<std::int64_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  const auto larger = [&residual](std::int64_t lhs, std::int64_t rhs) {
    const double lhs_abs = std::abs(residual(lhs));
    const double rhs_abs = std::abs(residual(rhs));
    if (lhs_abs != rhs_abs) {
      return lhs_abs > rhs_abs;
    }
    return lhs < rhs;  // ties -> lowest index
  };
  std::nth_element(order.begin(), order.begin() + (count - 1), order.end(), larger);
  std::vector<std::int64_t> suspects(order.begin(), order.begin() + count);
  std::sort(suspects.begin(), suspects.end());
  return suspects;
}

DetectionScore score_detection(std::span<const std::int64_t> suspects,
                               std::span<const std::int64_t> truth) {
  DetectionScore score;
  if (truth.empty()) {
    return score;  // vacuous recovery
  }
  std::size_t hits = 0;
  std::size_t si = 0;
  for (std::int64_t t : truth) {
    while (si < suspects.size() && suspects[si] < t) {
      ++si;
    }
    if (si < suspects.size() && suspects[si] == t) {
      ++hits;
    }
  }
  score.detected_fraction = static_cast<double>(hits) / static_cast<double>(truth.size());
  score.full_recovery = hits == truth.size();
  return score;
}

}  // namespace qrk
