#include "ringgyro/random.hpp"

#include <cmath>
#include <numbers>

namespace ringgyro {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                          std::uint64_t stream) noexcept {
  std::uint64_t h = splitmix64(master_seed ^ 0x6A09E667F3BCC909ULL);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ (stream * 0xD1B54A32D192ED03ULL));
}

double GaussianStream::uniform_open() noexcept {
  // 53 random bits, shifted by half an ulp so 0 is never returned.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> GaussianStream::normal_pair() noexcept {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

double GaussianStream::normal() noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  auto [a, b] = normal_pair();
  cached_ = b;
  has_cached_ = true;
  return a;
}

}  // namespace ringgyro
