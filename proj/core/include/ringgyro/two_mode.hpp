#pragma once
// Two-mode (soliton pair) model: closed forms for phase diffusion, the
// pre-twist angle, and the noninteracting mode-space map.
//
// Modes a and b are the |+> and |-> solitons. Pseudo-spin operators:
//   J_x = (a^+ b + b^+ a)/2,  J_y = (a^+ b - b^+ a)/(2i),  J_z = (a^+ a - b^+ b)/2.

#include <array>
#include <complex>
#include <map>

namespace ringgyro {

struct TwoModeParams {
  double n_total = 100.0;  // N_t = 2 N_s
  double chi_t = 0.0;      // chi T

  /// Coherent amplitude per mode, sqrt(N_t / 2).
  double alpha() const noexcept;
  /// Throws ContractViolation unless n_total > 0 and chi_t is finite.
  void validate() const;
};

struct SpinMoments {
  double jz2 = 0.0;
  double jy2 = 0.0;
  double jzjy_sym = 0.0;  // <J_z J_y + J_y J_z>
  double jx_mean = 0.0;
  double jy_mean = 0.0;
  double jz_mean = 0.0;
  double jy_var = 0.0;
  double jz_var = 0.0;
};

/// chi = -g0^2 N_s / 4, the curvature of the soliton energy in N.
double chi_from_g0(double g0, double n_s) noexcept;

/// E_N = (k0^2/2 - sign Omega k0 R) N - g0^2 N^3 / 24.
double soliton_energy(double n, double k0, double omega, double g0, int sign = 1, double radius = 1.0) noexcept;

/// T = 2 pi R^2 / n for winding number n = k0 R.
double ring_loop_time(long winding, double radius = 1.0);

/// chi T for solitons of N_t / 2 atoms on one loop.
double chi_t_from_g0(double g0, double n_total, long winding, double radius = 1.0);

/// The g0 <= 0 giving |chi T| = |chi_t|.
double g0_from_chi_t(double chi_t, double n_total, long winding, double radius = 1.0);

/// Var(J_y) = N_t/4 + (N_t^2/8)(1 - exp[-2 N_t sin^2(chi T)]).
double var_jy_analytic(const TwoModeParams& p);

/// <J_x> = (N_t/2) exp[N_t (cos(chi T) - 1)].
double mean_jx_analytic(const TwoModeParams& p);

/// hbar / (4 pi m R^2 sqrt(N_t)).
double benchmark_delta_omega(double n_total, double radius = 1.0);

struct TwoModeSensitivity {
  double delta_omega = 0.0;
  double log_delta_omega = 0.0;  // natural log, finite even when delta_omega overflows
  /// <J_x> has collapsed below double range; delta_omega is +inf.
  bool diverging = false;
};

/// Delta Omega = sqrt(Var J_y) / (4 pi R^2 <J_x>), evaluated in log space.
TwoModeSensitivity delta_omega_two_mode(const TwoModeParams& p, double radius = 1.0);

/// gamma in [0, 1) from the closed form with s = sin^2(chi T).
double gamma(const TwoModeParams& p);

/// theta_chi = -acos(-gamma). Throws UndefinedAngle when sin(chi T) = 0.
///
/// Rotations follow J_z -> J_z cos(theta) + J_y sin(theta). With that action,
/// theta_chi restores Var(J_z) = N_t/4 for chi T < 0 (attractive gas); for
/// chi T > 0 the restoring pair is mirrored, see restoring_angles().
double theta_chi(const TwoModeParams& p);

/// +-acos(+-gamma) in the order acos(g), acos(-g), -acos(g), -acos(-g).
std::array<double, 4> theta_candidates(const TwoModeParams& p);

/// The two angles in (-pi, pi] that return Var(J_z) to N_t/4 after one twist:
/// tan(theta) = -<{J_z, J_y}> / (<J_y^2> - <J_z^2>).
std::array<double, 2> restoring_angles(const TwoModeParams& p);

/// Normally ordered moments of the twisted coherent pair (identical for a and
/// b by symmetry).
struct CoherentMoments {
  double number = 0.0;        // <a^+ a>
  double pair = 0.0;          // <a^+ a^+ a a>
  std::complex<double> exchange;  // <a^+ a^+ b b>
  std::complex<double> hop;       // <a^+ a^+ a b>
  std::complex<double> hop_conj;  // <a^+ a a b^+> = conj(hop)
  /// <a^+ a b^+ b>; fixed at N_t^2/4 because the twist conserves both numbers.
  double cross = 0.0;
};

CoherentMoments coherent_moments(const TwoModeParams& p);

/// <J_z^2>, <J_y^2>, <{J_z, J_y}> and <J_x> from the normally ordered moments.
SpinMoments assemble_spin_moments(const CoherentMoments& m);

/// Mean-field amplitudes of ring modes exp(i q xi / R), keyed by q.
struct RingModeAmplitudes {
  std::map<long, std::complex<double>> plus;
  std::map<long, std::complex<double>> minus;

  double population_plus() const;
  double population_minus() const;
};

/// First 50/50 splitter, free evolution for time t in the rotating frame,
/// final 50/50 splitter; splitters shift mode numbers by +-2n.
RingModeAmplitudes noninteracting_mode_evolution(const RingModeAmplitudes& amplitudes, long n, double omega,
                                                 double t, double radius = 1.0);

}  // namespace ringgyro
