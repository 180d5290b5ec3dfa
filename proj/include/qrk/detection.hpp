#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrk/types.hpp"

namespace qrk {

/// Indices (0-based) of the `count` largest |residual| entries. Ties resolve
/// to the lowest index; the returned set is sorted ascending.
std::vector<std::int64_t> top_residual_indices(const Vector& residual, std::int64_t count);

struct DetectionScore {
  double detected_fraction = 1.0;  // |suspects ∩ truth| / |truth|; 1 when truth is empty
  bool full_recovery = true;       // truth ⊆ suspects
};

/// Scores a suspect set against the true corruption support. Both inputs must
/// be sorted ascending.
DetectionScore score_detection(std::span<const std::int64_t> suspects,
                               std::span<const std::int64_t> truth);

/// Per-iteration detection summary.
struct DetectionReport {
  std::int64_t k = 0;
  std::vector<std::int64_t> suspects;
  double detected_fraction = 1.0;
  bool full_recovery = true;
  double probability_bound = 0.0;
};

}  // namespace qrk
