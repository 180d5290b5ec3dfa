#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qrk {

/// SplitMix64 finalizer; used to derive well-separated stream seeds.
std::uint64_t mix64(std::uint64_t z);

/// Purposes for derived random streams. A run owns one master seed; every
/// consumer (matrix entries, solution entries, noise, corruption, row picks,
/// subset sampling, per-trial roots) gets its own stream so the draws stay
/// statistically independent.
enum class StreamPurpose : std::uint64_t {
  matrix = 1,
  solution = 2,
  noise = 3,
  corruption = 4,
  row_sampling = 5,
  subset_sampling = 6,
  trial = 7,
};

std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose, std::uint64_t index = 0);

/// Deterministic random stream. Gaussian variates use Box-Muller on top of
/// the raw engine so the byte-for-byte output does not depend on the standard
/// library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal variate.
  double gaussian();

  /// Uniform integer in [lo, hi], both inclusive. Unbiased (rejection).
  std::int64_t uniform_index(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform fixed-size subsets of {0, ..., population-1} without replacement,
/// drawn by partial Fisher-Yates over a scratch permutation. Each call is a
/// pure function of the stream passed in (the scratch is restored), so draws
/// can be replayed independently of call order.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::int64_t population);

  /// Writes `count` distinct indices to `out`, sorted ascending.
  void sample(RandomStream& rng, std::int64_t count, std::vector<std::int64_t>& out);

  std::int64_t population() const { return static_cast<std::int64_t>(perm_.size()); }

 private:
  std::vector<std::int64_t> perm_;
  std::vector<std::int64_t> swapped_with_;
};

}  // namespace qrk
