#include <doctest.h>

#include <cmath>
#include <vector>

#include "ringgyro/errors.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/statistics.hpp"

using namespace ringgyro;

TEST_SUITE("statistics") {
  TEST_CASE("summarize: mean, unbiased variance, standard errors") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(x, 0.5);
    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.variance == doctest::Approx(5.0 / 3.0));
    CHECK(s.mean_stderr == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(s.quantum_variance() == doctest::Approx(5.0 / 3.0 - 0.5));
    CHECK(s.variance_stderr > 0.0);
  }

  TEST_CASE("summarize needs two samples") {
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(summarize(one), InsufficientStatistics);
  }

  TEST_CASE("compensated sums survive large offsets") {
    std::vector<double> x;
    for (int i = 0; i < 1000; ++i) x.push_back(1e8 + (i % 2 ? 1.0 : -1.0));
    const auto s = summarize(x);
    CHECK(s.mean == 1e8);
    CHECK(s.variance == doctest::Approx(1000.0 / 999.0).epsilon(1e-6));
  }

  TEST_CASE("ordering corrections") {
    const Grid1D g = Grid1D::ring(512);
    CHECK(two_component_ordering_correction(g) == 256.0);
    CHECK(split_ordering_correction(g) == 128.0);
  }

  TEST_CASE("number differences subtract the vacuum offsets") {
    const Grid1D g = Grid1D::ring(64);
    ComplexField p(g), m(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      p[i] = std::sqrt(3.0 / g.length() + 0.5 / g.spacing());
      m[i] = std::sqrt(1.0 / g.length() + 0.5 / g.spacing());
    }
    CHECK(number_difference(TwoComponentField(p, m)) == doctest::Approx(2.0));
    // Half the ring sits at x < 0: each half carries 1.5 atoms after its own M/4 offset.
    CHECK(split_number_difference(p, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("ensemble seeds are distinct and reproducible") {
    const Grid1D g = Grid1D::ring(64);
    const ComplexField mean = std::sqrt(50.0) * gaussian_packet(g, 0.0, 0.5, 2.0);
    const auto a = TrajectoryEnsemble::sample(mean, mean, 6, 77);
    const auto b = TrajectoryEnsemble::sample(mean, mean, 6, 77, 3);
    CHECK(a.count() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(a.seeds[i] == derive_seed(77, i));
      for (std::size_t j = 0; j < i; ++j) CHECK(a.seeds[i] != a.seeds[j]);
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(a.trajectories[i].plus[k] == b.trajectories[i].plus[k]);
    }
    CHECK_THROWS_AS(TrajectoryEnsemble::sample(mean, mean, 1, 77), InsufficientStatistics);
  }

  TEST_CASE("coherent ensemble: Var(N_d) - M/2 estimates N") {
    const Grid1D g = Grid1D::ring(64);
    const ComplexField mean = std::sqrt(200.0) * gaussian_packet(g, 0.0, 0.5, 2.0);
    const auto e = TrajectoryEnsemble::sample(mean, mean, 4000, 5);
    const auto s = number_difference_stats(e);
    CHECK(s.ordering_correction == 32.0);
    CHECK(std::abs(s.quantum_variance() - 400.0) < 3.0 * s.variance_stderr);
    CHECK(std::abs(s.mean) < 3.0 * s.mean_stderr);
  }

  TEST_CASE("sensitivity from a synthetic linear response") {
    // N_d = slope * Omega + noise with Var(noise) - correction = 100.
    GaussianStream rng(4);
    OmegaScan scan;
    scan.d_omega = 0.01;
    scan.ordering_correction = 21.0;
    const double slope = 5000.0;
    for (int i = 0; i < 20000; ++i) {
      const double n = std::sqrt(121.0) * rng.normal();
      scan.minus.push_back(-slope * scan.d_omega + n);
      scan.zero.push_back(n);
      scan.plus.push_back(slope * scan.d_omega + n);
    }
    const auto e = sensitivity(scan);
    CHECK(e.slope == doctest::Approx(slope).epsilon(1e-12));
    CHECK(e.delta_omega == doctest::Approx(10.0 / slope).epsilon(0.03));
    CHECK_FALSE(e.infinite);
  }

  TEST_CASE("flat response gives an infinite Delta Omega") {
    GaussianStream rng(6);
    OmegaScan scan;
    scan.d_omega = 0.01;
    for (int i = 0; i < 100; ++i) {
      scan.minus.push_back(rng.normal());
      scan.zero.push_back(rng.normal());
      scan.plus.push_back(rng.normal());
    }
    const auto e = sensitivity(scan);
    CHECK(e.infinite);
    CHECK(std::isinf(e.delta_omega));
  }
}
