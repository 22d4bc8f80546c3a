#pragma once

#include <functional>
#include <limits>

#include "ringgyro/grid.hpp"

namespace ringgyro {

/// A wavefunction family sampled at phi and phi +- dphi.
struct PhiDerivativeBundle {
  ComplexField center;
  ComplexField plus;   // psi(phi + dphi)
  ComplexField minus;  // psi(phi - dphi)
  double dphi = 1e-3;

  /// Throws ContractViolation unless the three fields share a grid and dphi > 0.
  void validate() const;
};

/// Single-particle QFI, 4 [<d psi|d psi> - |<psi|d psi>|^2], with the
/// derivative taken by central differences. Multiply by N for a separable
/// N-particle state.
///
/// Throws PreconditionError if any member deviates from unit norm by more
/// than 1e-6 and NumericalDerivativeError if the result is below -1e-8.
/// Small negative round-off is clamped to 0.
double qfi_single_particle(const PhiDerivativeBundle& bundle);

/// Two-outcome CFI (dP_L)^2/P_L + (dP_R)^2/P_R with P_R = 1 - P_L.
///
/// Throws DegenerateOutcome when P_L(phi) is within 1e-6 of 0 or 1.
double cfi_two_outcome(double p_left_minus, double p_left_center, double p_left_plus, double dphi);

/// Density-resolving CFI, integral (d_phi |psi|^2)^2 / |psi|^2 dx, restricted
/// to points where |psi|^2 > floor (absolute threshold).
double cfi_density(const PhiDerivativeBundle& bundle, double floor);

/// Default density floor: 1e-12 times the peak density of bundle.center.
double default_density_floor(const PhiDerivativeBundle& bundle);

/// Probability to find the particle at x < partition, with the grid cell
/// containing the partition split proportionally.
double probability_left(const ComplexField& field, double partition = 0.0);

/// Result of evaluating an estimator at dphi and dphi/2.
struct RichardsonCheck {
  double coarse = 0.0;
  double fine = 0.0;
  double extrapolated = 0.0;  // (4 fine - coarse) / 3
  double relative_change = 0.0;
  bool converged = false;     // relative_change < tolerance
};

/// Evaluates `estimator(dphi)` and `estimator(dphi / 2)`.
RichardsonCheck richardson_check(const std::function<double(double)>& estimator, double dphi,
                                 double tolerance = 1e-2);

/// One point of an (F_Q, F_C, F_C^x) time series.
struct FisherSample {
  double t = 0.0;
  double qfi = 0.0;
  double cfi = 0.0;
  double cfi_density = 0.0;
  double p_left = 0.0;
  double density_floor = 0.0;
  /// F_C or F_C^x exceeds the reference QFI. Impossible under exact quantum
  /// dynamics; expected under the GPE.
  bool qcrb_violation = false;
  /// F_Q has drifted above the reference QFI (it is invariant for unitary evolution).
  bool qfi_growth = false;
};

/// Evaluate all three estimators on a bundle. `reference_qfi` is the QFI of
/// the initial state (pass NaN to compare against the current F_Q). Both
/// flags use a relative tolerance of 1e-3 so finite-difference noise does not
/// trip them.
FisherSample fisher_sample(const PhiDerivativeBundle& bundle, double t, double partition = 0.0,
                           double reference_qfi = std::numeric_limits<double>::quiet_NaN());

}  // namespace ringgyro
