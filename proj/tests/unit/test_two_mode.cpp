#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringgyro/errors.hpp"
#include "ringgyro/two_mode.hpp"

using namespace ringgyro;

// Reference values below were evaluated at 30 significant digits with mpmath
// directly from the closed forms.

TEST_SUITE("two_mode") {
  TEST_CASE("gamma and theta_chi at N_t = 100, chi T = -0.03") {
    const TwoModeParams p{100.0, -0.03};
    CHECK(gamma(p) == doctest::Approx(0.820578944689622478).epsilon(1e-13));
    CHECK(theta_chi(p) == doctest::Approx(-2.53321957792410708).epsilon(1e-13));
  }

  TEST_CASE("gamma small-angle value") {
    const TwoModeParams p{100.0, 0.001};
    CHECK(gamma(p) == doctest::Approx(0.0499351181341822086).epsilon(1e-12));
    CHECK(gamma(p) == doctest::Approx(100.0 * 0.001 / 2.0).epsilon(2e-3));
  }

  TEST_CASE("gamma stays finite for strong twisting") {
    const TwoModeParams p{1e4, -0.5};
    const double g = gamma(p);
    CHECK(std::isfinite(g));
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }

  TEST_CASE("theta_chi is undefined without twisting") {
    CHECK_THROWS_AS(theta_chi({100.0, 0.0}), UndefinedAngle);
    CHECK(gamma({100.0, 0.0}) == 0.0);
  }

  TEST_CASE("spin moments after one twist") {
    const TwoModeParams p{100.0, -0.03};
    CHECK(var_jy_analytic(p) == doctest::Approx(230.855860239951455).epsilon(1e-13));
    CHECK(mean_jx_analytic(p) == doctest::Approx(47.8000354116626144).epsilon(1e-13));
    const SpinMoments m = assemble_spin_moments(coherent_moments(p));
    CHECK(m.jz2 == doctest::Approx(25.0));
    CHECK(m.jy2 == doctest::Approx(var_jy_analytic(p)).epsilon(1e-13));
    CHECK(m.jzjy_sym == doctest::Approx(-143.378597186982571).epsilon(1e-13));
    CHECK(m.jx_mean == doctest::Approx(mean_jx_analytic(p)).epsilon(1e-13));
  }

  TEST_CASE("restoring angles") {
    const TwoModeParams p{100.0, -0.03};
    const auto r = restoring_angles(p);
    const auto c = theta_candidates(p);
    CHECK(c[0] == doctest::Approx(0.608373075665686156).epsilon(1e-12));
    // For chi T < 0 the pair is {acos(gamma), -acos(-gamma)}.
    const bool match = (std::abs(r[0] - c[0]) < 1e-10 && std::abs(r[1] - c[3]) < 1e-10) ||
                       (std::abs(r[0] - c[3]) < 1e-10 && std::abs(r[1] - c[0]) < 1e-10);
    CHECK(match);
    // Var(J_z) after rotation: A cos^2 + B sin^2 + C sin cos.
    const SpinMoments m = assemble_spin_moments(coherent_moments(p));
    for (double t : r) {
      const double v = m.jz2 * std::pow(std::cos(t), 2) + m.jy2 * std::pow(std::sin(t), 2) +
                       m.jzjy_sym * std::sin(t) * std::cos(t);
      CHECK(v == doctest::Approx(25.0).epsilon(1e-12));
    }
  }

  TEST_CASE("restoring pair mirrors for chi T > 0") {
    const TwoModeParams p{100.0, 0.03};
    const auto r = restoring_angles(p);
    const auto c = theta_candidates(p);
    const bool match = (std::abs(r[0] - c[1]) < 1e-10 && std::abs(r[1] - c[2]) < 1e-10) ||
                       (std::abs(r[0] - c[2]) < 1e-10 && std::abs(r[1] - c[1]) < 1e-10);
    CHECK(match);
  }

  TEST_CASE("two-mode Delta Omega") {
    CHECK(delta_omega_two_mode({1e4, 0.0}).delta_omega == doctest::Approx(7.95774715459476679e-4).epsilon(1e-13));
    CHECK(benchmark_delta_omega(1e4) == doctest::Approx(7.95774715459476679e-4).epsilon(1e-13));
    CHECK(delta_omega_two_mode({1e4, -0.0076}).delta_omega == doctest::Approx(0.0621737368430857614).epsilon(1e-12));
    CHECK(delta_omega_two_mode({1e4, -0.00297}).delta_omega == doctest::Approx(0.0236644204663752470).epsilon(1e-12));
  }

  TEST_CASE("Delta Omega grows monotonically with |chi T|") {
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double v = delta_omega_two_mode({1e4, -0.0002 * i}).delta_omega;
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("Delta Omega diverges gracefully") {
    const auto r = delta_omega_two_mode({1e4, -1.0});
    CHECK(r.diverging);
    CHECK(std::isinf(r.delta_omega));
    CHECK(std::isfinite(r.log_delta_omega));
  }

  TEST_CASE("chi from g0") {
    CHECK(chi_from_g0(-0.0088, 5000.0) == doctest::Approx(-0.0968));
    CHECK(chi_t_from_g0(-0.0088, 1e4, 80) == doctest::Approx(-0.0968 * 2.0 * std::numbers::pi / 80.0));
    CHECK(chi_t_from_g0(-0.0088, 1e4, 80) == doctest::Approx(-7.6e-3).epsilon(1e-3));
    CHECK(g0_from_chi_t(chi_t_from_g0(-0.004, 1e4, 80), 1e4, 80) == doctest::Approx(-0.004));
    CHECK_THROWS_AS(ring_loop_time(0), ContractViolation);
  }

  TEST_CASE("soliton energy curvature gives chi") {
    const double g0 = -0.004, n = 5000.0, h = 1.0;
    const double e2 = (soliton_energy(n + h, 80.0, 0.0, g0) - 2.0 * soliton_energy(n, 80.0, 0.0, g0) +
                       soliton_energy(n - h, 80.0, 0.0, g0)) /
                      (h * h);
    CHECK(e2 == doctest::Approx(chi_from_g0(g0, n)).epsilon(1e-6));
  }

  TEST_CASE("noninteracting mode evolution: P_+ = (1 - sin phi_Omega) / 2") {
    for (double omega : {0.0, 0.01, 0.05, -0.03}) {
      RingModeAmplitudes a;
      a.plus[80] = 1.0;
      const double T = ring_loop_time(80);
      const auto out = noninteracting_mode_evolution(a, 80, omega, T);
      const double phi = 4.0 * std::numbers::pi * omega;
      CHECK(out.population_plus() + out.population_minus() == doctest::Approx(1.0));
      CHECK(out.population_plus() == doctest::Approx(0.5 * (1.0 - std::sin(phi))).epsilon(1e-12));
    }
  }
}
