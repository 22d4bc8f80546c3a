#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace ringgyro {

/// Seed for trajectory `index` of an ensemble started from `master_seed`.
///
/// Pure function of its arguments (SplitMix64 finalizer applied twice), so a
/// trajectory draws the same noise whichever worker runs it. `stream` separates
/// independent uses of the same (master, index) pair.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                          std::uint64_t stream = 0) noexcept;

/// Standard normal variates from a 64-bit Mersenne Twister.
///
/// The transform (53-bit uniforms, Box-Muller) is spelled out here rather than
/// taken from std::normal_distribution, whose output is implementation defined.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double uniform_open() noexcept;  // (0, 1)
  double normal() noexcept;
  std::pair<double, double> normal_pair() noexcept;

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ringgyro
