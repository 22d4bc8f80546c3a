#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringgyro/errors.hpp"
#include "ringgyro/fisher.hpp"
#include "ringgyro/initial_states.hpp"

using namespace ringgyro;

namespace {

PhiDerivativeBundle pair_bundle(double phi, double dphi) {
  const Grid1D g = Grid1D::line(4096, 40.0);
  const ComplexField l = gaussian_packet(g, -5.0, 0.5, 10.0);
  const ComplexField r = gaussian_packet(g, 5.0, 0.5, -10.0);
  return {superposition_pair(l, r, phi), superposition_pair(l, r, phi + dphi), superposition_pair(l, r, phi - dphi),
          dphi};
}

// (1 + e^{i(x + phi)}) / sqrt(4 pi): density (1 + cos(x + phi)) / (2 pi).
ComplexField fringe(const Grid1D& g, double phi) {
  ComplexField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = (1.0 + std::polar(1.0, g.x(i) + phi)) / std::sqrt(4.0 * std::numbers::pi);
  return f;
}

}  // namespace

TEST_SUITE("fisher") {
  TEST_CASE("QFI of a balanced two-packet superposition is 1") {
    CHECK(qfi_single_particle(pair_bundle(0.7, 1e-3)) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("QFI is zero for a phi-independent state") {
    const Grid1D g = Grid1D::ring(64);
    const ComplexField f = gaussian_packet(g, 0.0, 0.5, 0.0);
    CHECK(qfi_single_particle({f, f, f, 1e-3}) == doctest::Approx(0.0));
  }

  TEST_CASE("non-normalized input is rejected") {
    auto b = pair_bundle(0.2, 1e-3);
    b.plus *= 1.01;
    CHECK_THROWS_AS(qfi_single_particle(b), PreconditionError);
  }

  TEST_CASE("two-outcome CFI of P_L = cos^2(phi/2) is 1 everywhere") {
    for (double phi : {0.3, 1.0, 1.5707963, 2.5}) {
      const double d = 1e-4;
      auto p = [](double x) { return std::pow(std::cos(0.5 * x), 2); };
      CHECK(cfi_two_outcome(p(phi - d), p(phi), p(phi + d), d) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("degenerate outcome") {
    CHECK_THROWS_AS(cfi_two_outcome(1.0, 1.0, 1.0, 1e-3), DegenerateOutcome);
    CHECK_THROWS_AS(cfi_two_outcome(0.0, 1e-8, 0.0, 1e-3), DegenerateOutcome);
  }

  TEST_CASE("density-resolving CFI of a cosine fringe is 1") {
    const Grid1D g = Grid1D::ring(2048);
    const double phi = 0.1, d = 1e-4;
    const PhiDerivativeBundle b{fringe(g, phi), fringe(g, phi + d), fringe(g, phi - d), d};
    CHECK(cfi_density(b, default_density_floor(b)) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(qfi_single_particle(b) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("probability_left") {
    const Grid1D g = Grid1D::line(1024, 20.0);
    const ComplexField l = gaussian_packet(g, -4.0, 0.5, 0.0);
    CHECK(probability_left(l) == doctest::Approx(1.0));
    CHECK(probability_left(l, -4.0) == doctest::Approx(0.5).epsilon(1e-3));
  }

  TEST_CASE("Richardson check on a quadratic-error estimator") {
    const auto r = richardson_check([](double h) { return 2.0 + 3.0 * h * h; }, 0.1, 0.02);
    CHECK(r.coarse == doctest::Approx(2.03));
    CHECK(r.fine == doctest::Approx(2.0075));
    CHECK(r.extrapolated == doctest::Approx(2.0));
    CHECK(r.converged);
  }

  TEST_CASE("fisher_sample flags exceedances of the reference QFI") {
    const auto b = pair_bundle(1.5707963267948966, 1e-3);
    const FisherSample ok = fisher_sample(b, 0.0, 0.0, 1.0);
    CHECK_FALSE(ok.qcrb_violation);
    CHECK_FALSE(ok.qfi_growth);
    const FisherSample bad = fisher_sample(b, 0.0, 0.0, 0.5);
    CHECK(bad.qfi_growth);
  }
}
