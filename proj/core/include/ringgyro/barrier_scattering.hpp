#pragma once
// Scattering of matter-wave packets off a narrow barrier: 50% tuning and the
// phase-sensitivity of two colliding packets.

#include <cstddef>
#include <optional>
#include <vector>

#include "ringgyro/fisher.hpp"
#include "ringgyro/grid.hpp"
#include "ringgyro/propagator.hpp"

namespace ringgyro {

/// A single unit-norm packet moving towards a barrier.
struct ScatteringSetup {
  Grid1D grid;
  ComplexField packet;
  double barrier_width = 1e-2;
  double barrier_center = 0.0;
  double duration = 1.0;  // long enough for the packet to clear the barrier
  double dt = 1e-4;
  /// Sign of the incident carrier; reflected atoms end up with the opposite sign.
  int incident_sign = 1;
};

/// Gaussian exp(-(x-x0)^2/sigma^2) at x0 = -offset with carrier +k on a
/// periodic box, run for 2 offset / k.
ScatteringSetup line_scattering_setup(double k, double barrier_width, double sigma = 0.5,
                                      double offset = 5.0, double length = 40.0,
                                      std::size_t n_points = 16384, double dt = 1e-4);

/// Fraction of the packet whose momentum has reversed after setup.duration.
double reflection_probability(const ScatteringSetup& setup, double height);

struct BarrierTuning {
  double height = 0.0;
  double reflection = 0.0;
  int evaluations = 0;
};

/// Bisection on the barrier height until the reflected fraction lies in
/// [target_low, target_high]. Throws TuningError when no bracket is found
/// or the bisection stalls.
BarrierTuning tune_barrier(const ScatteringSetup& setup, double target_low = 0.495,
                           double target_high = 0.505);

/// tune_barrier on line_scattering_setup(k, w).
double tune_barrier(double k, double w);

enum class CollisionCase { noninteracting_gaussian, attractive_soliton };

/// Two packets, (Psi_L e^{ikx} + e^{i phi} Psi_R e^{-ikx}) / sqrt(2), started
/// at -+x0 and colliding on a barrier at 0.
struct CollisionConfig {
  CollisionCase kind = CollisionCase::noninteracting_gaussian;
  std::size_t n_points = 16384;
  double length = 40.0;
  double x0 = 5.0;
  double sigma = 0.5;     // Gaussian width
  double k = 10.0;
  double barrier_width = 1e-2;
  double barrier_height = 0.0;  // <= 0: tune to 50% reflection for a single Gaussian at k
  double g0n = -8.0;      // g0 N, attractive case only; each packet has kappa = |g0 N| / 4
  double dt = 1e-4;
  double t_final = 1.5;
  std::size_t n_samples = 41;
  double dphi = 1e-3;
  std::optional<double> phi;  // default: solve P_L(t_final) = 1/2

  Grid1D grid() const;
  EvolutionSpec evolution(double height) const;
  void validate() const;
};

ComplexField collision_initial_state(const CollisionConfig& config, double phi);

/// P_L(t_final) - P_R(t_final) for each phi.
std::vector<double> collision_population_curve(const CollisionConfig& config, double height,
                                               const std::vector<double>& phis);

/// Phase giving P_L = 1/2 at t_final on the steepest crossing, to 1e-8 in P_L.
double balanced_phase(const CollisionConfig& config, double height);

struct CollisionSeries {
  double barrier_height = 0.0;
  double phi = 0.0;
  std::vector<FisherSample> samples;  // equally spaced in [0, t_final]
};

/// F_Q, F_C and F_C^x along the collision, evaluated at phi and phi +- dphi.
CollisionSeries collision_fisher_series(const CollisionConfig& config);

}  // namespace ringgyro
