#include "qrk/random.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qrk {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose, std::uint64_t index) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ static_cast<std::uint64_t>(purpose));
  s = mix64(s ^ index);
  return s;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::int64_t RandomStream::uniform_index(std::int64_t lo, std::int64_t hi) {
  assert(lo <= hi);
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) {
    return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  }
  const std::uint64_t reject_below = (-range) % range;  // 2^64 mod range
  std::uint64_t draw = 0;
  do {
    draw = next_u64();
  } while (draw < reject_below);
  return lo + static_cast<std::int64_t>(draw % range);
}

SubsetSampler::SubsetSampler(std::int64_t population) : perm_(population) {
  if (population < 0) {
    throw std::invalid_argument("SubsetSampler: negative population");
  }
  std::iota(perm_.begin(), perm_.end(), std::int64_t{0});
}

void SubsetSampler::sample(RandomStream& rng, std::int64_t count, std::vector<std::int64_t>& out) {
  const std::int64_t n = population();
  if (count < 0 || count > n) {
    throw std::invalid_argument("SubsetSampler: count out of range");
  }
  out.resize(static_cast<std::size_t>(count));
  swapped_with_.resize(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t j = rng.uniform_index(i, n - 1);
    std::swap(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]);
    swapped_with_[static_cast<std::size_t>(i)] = j;
    out[static_cast<std::size_t>(i)] = perm_[static_cast<std::size_t>(i)];
  }
  // Undo the swaps so the scratch permutation is identity again; this makes
  // each draw depend only on the stream, not on previous draws.
  for (std::int64_t i = count - 1; i >= 0; --i) {
    std::swap(perm_[static_cast<std::size_t>(i)],
              perm_[static_cast<std::size_t>(swapped_with_[static_cast<std::size_t>(i)])]);
  }
  std::sort(out.begin(), out.end());
}

}  // namespace qrk
