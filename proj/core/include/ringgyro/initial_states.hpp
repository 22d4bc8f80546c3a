#pragma once

#include "ringgyro/grid.hpp"
#include "ringgyro/random.hpp"

namespace ringgyro {

/// Bright-soliton parameters in units hbar = m = R = 1.
///
/// n_s is the mean atom number in the mode, g0 <= 0 the 1D interaction
/// strength and k0 the carrier wavenumber (k0 R must be an integer on a ring).
struct SolitonParams {
  double n_s = 5000.0;
  double g0 = 0.0;
  double k0 = 80.0;

  /// mu = -n_s^2 g0^2 / 8.
  double chemical_potential() const noexcept;
  /// Inverse width of the sech profile, sqrt(2|mu|) = n_s |g0| / 2.
  double inverse_width() const noexcept;

  /// Throws ContractViolation when n_s <= 0, g0 > 0, or k0 R is not an integer.
  void validate(double radius = 1.0) const;
};

/// Normalized Gaussian exp(-(x-x0)^2/sigma^2) e^{i k x} e^{i phase}.
///
/// Distances are taken modulo the box so the packet wraps on a ring. Throws
/// ResolutionError when sigma <= 3 dx or the packet does not fit in the box.
ComplexField gaussian_packet(const Grid1D& grid, double x0, double sigma, double k, double phase = 0.0);

/// Normalized sech(kappa (x-x0)) e^{i k x} e^{i phase}, for an arbitrary inverse width.
///
/// Throws ResolutionError unless 3 dx < 1/kappa < length/8.
ComplexField sech_packet(const Grid1D& grid, double x0, double kappa, double k, double phase = 0.0);

/// Soliton of `params` centered at x0 with carrier sign * k0. The infinite-line
/// profile is truncated to the box and renormalized.
ComplexField sech_soliton(const Grid1D& grid, const SolitonParams& params, int sign, double x0 = 0.0);

/// (left + e^{i phi} right) / sqrt(2), renormalized to unit norm.
///
/// Throws PreconditionError when |<left|right>| >= 1e-3.
ComplexField superposition_pair(const ComplexField& left, const ComplexField& right, double phi);

/// Truncated-Wigner sample of a Glauber coherent state with mean `mean_field`.
///
/// Adds complex Gaussian noise eta with E[eta_i* eta_j] = delta_ij / (2 dx) and
/// E[eta_i eta_j] = 0, i.e. Re and Im each have variance 1/(4 dx). `mean_field`
/// is the coherent amplitude itself (sqrt(N) times a unit-norm mode).
ComplexField sample_wigner_coherent(const ComplexField& mean_field, GaussianStream& rng);

/// Same, with the coherent amplitude given as sqrt(n_atoms) * unit_mode.
ComplexField sample_wigner_coherent(const ComplexField& unit_mode, double n_atoms, GaussianStream& rng);

}  // namespace ringgyro
