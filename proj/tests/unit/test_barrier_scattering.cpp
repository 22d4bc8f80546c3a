#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringgyro/barrier_scattering.hpp"
#include "ringgyro/errors.hpp"

using namespace ringgyro;

namespace {

// Reflection of a delta barrier of strength alpha, averaged over the momentum
// distribution exp(-(k - k0)^2 sigma^2 / 2) of the packet exp(-x^2/sigma^2).
double delta_reflection(double alpha, double k0, double sigma) {
  double num = 0.0, den = 0.0;
  const double h = 1e-3;
  for (double k = k0 - 12.0 / sigma; k <= k0 + 12.0 / sigma; k += h) {
    const double w = std::exp(-0.5 * (k - k0) * (k - k0) * sigma * sigma);
    num += w * alpha * alpha / (alpha * alpha + k * k);
    den += w;
  }
  return num / den;
}

CollisionConfig small_collision(CollisionCase kind) {
  CollisionConfig c;
  c.kind = kind;
  c.n_points = 4096;
  c.barrier_width = 0.05;
  c.dt = 4e-4;
  c.t_final = 1.0;
  c.n_samples = 5;
  c.barrier_height = 9.0;
  return c;
}

}  // namespace

TEST_SUITE("barrier_scattering") {
  TEST_CASE("no barrier: only the negative-momentum tail returns") {
    const auto s = line_scattering_setup(10.0, 0.05, 0.5, 5.0, 40.0, 4096, 4e-4);
    // |psi(k)|^2 has standard deviation 1/sigma = 2 about k = 10.
    const double tail = 0.5 * std::erfc(5.0 / std::sqrt(2.0));
    CHECK(reflection_probability(s, 0.0) < 2.0 * tail);
  }

  TEST_CASE("narrow barrier matches the delta-barrier reflection") {
    const auto s = line_scattering_setup(10.0, 0.01, 0.5, 5.0, 40.0, 16384, 2e-4);
    const double alpha = 9.0;
    const double expected = delta_reflection(alpha, 10.0, 0.5);
    CHECK(reflection_probability(s, alpha) == doctest::Approx(expected).epsilon(0.02));
  }

  TEST_CASE("tuning lands inside the target window") {
    const auto s = line_scattering_setup(10.0, 0.05, 0.5, 5.0, 40.0, 4096, 4e-4);
    const BarrierTuning t = tune_barrier(s);
    CHECK(t.reflection >= 0.495);
    CHECK(t.reflection <= 0.505);
    CHECK(reflection_probability(s, t.height) == doctest::Approx(t.reflection));
    CHECK_THROWS_AS(tune_barrier(s, 0.6, 0.4), ContractViolation);
  }

  TEST_CASE("collision config validation") {
    CollisionConfig c;
    c.n_points = 1024;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n_points"), ConfigError);
    c = CollisionConfig{};
    c.kind = CollisionCase::attractive_soliton;
    c.g0n = 1.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("g0n"), ConfigError);
  }

  TEST_CASE("population curve is 2 pi periodic") {
    const auto c = small_collision(CollisionCase::noninteracting_gaussian);
    const auto v = collision_population_curve(c, c.barrier_height, {0.4, 0.4 + 2.0 * std::numbers::pi});
    CHECK(v[0] == doctest::Approx(v[1]).epsilon(1e-9));
  }

  TEST_CASE("balanced phase gives P_L = 1/2") {
    const auto c = small_collision(CollisionCase::noninteracting_gaussian);
    const double phi = balanced_phase(c, c.barrier_height);
    const auto v = collision_population_curve(c, c.barrier_height, {phi});
    CHECK(std::abs(v[0]) < 2e-8);
  }

  TEST_CASE("noninteracting collision keeps F_Q = 1") {
    const auto s = collision_fisher_series(small_collision(CollisionCase::noninteracting_gaussian));
    REQUIRE(s.samples.size() == 5);
    for (const auto& f : s.samples) {
      CHECK(f.qfi == doctest::Approx(1.0).epsilon(1e-4));
      CHECK_FALSE(f.qfi_growth);
      CHECK_FALSE(f.qcrb_violation);
    }
    CHECK(s.samples.back().cfi > 0.8);
  }
}
