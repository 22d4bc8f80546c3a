#pragma once
// Truncated-Wigner trajectories of the two-mode model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ringgyro/statistics.hpp"
#include "ringgyro/two_mode.hpp"

namespace ringgyro {

/// One step of a two-mode sequence.
///
///   twist:  a -> a exp(-i chi T (|a|^2 - 1)), same for b
///   rotate: exp(-i theta J_x), i.e. a -> a cos(theta/2) - i b sin(theta/2),
///           b -> b cos(theta/2) - i a sin(theta/2)
///   phase:  a -> a e^{i phi/2}, b -> b e^{-i phi/2} (rotation signal of one loop)
struct TwoModeStage {
  enum class Kind { twist, rotate, phase };
  Kind kind = Kind::twist;
  double value = 0.0;

  static TwoModeStage twist(double chi_t) { return {Kind::twist, chi_t}; }
  static TwoModeStage rotate(double theta) { return {Kind::rotate, theta}; }
  static TwoModeStage phase(double phi) { return {Kind::phase, phi}; }
};

struct SpinPoint {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
};

struct MomentEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Ensemble moments with symmetric-ordering corrections applied: the
/// estimators of J_y^2, J_z^2 and their variances subtract 1/8.
struct SpinMomentsEstimate {
  MomentEstimate jz2, jy2, jzjy_sym, jx_mean, jy_mean, jz_mean, jy_var, jz_var;

  SpinMoments values() const;
};

struct TwoModeTwResult {
  /// clouds[s][i]: trajectory i after s stages (s = 0 is the initial sample).
  std::vector<std::vector<SpinPoint>> clouds;
  std::vector<SpinMomentsEstimate> moments;
};

/// Applies one stage to a pair of amplitudes.
void apply_stage(const TwoModeStage& stage, std::complex<double>& a, std::complex<double>& b);

/// Coherent means sqrt(N_t/2) with noise of variance 1/4 per quadrature;
/// trajectory i uses derive_seed(seed, i). Throws InsufficientStatistics
/// when n_traj < 2.
TwoModeTwResult two_mode_tw(const TwoModeParams& p, std::span<const TwoModeStage> sequence, std::size_t n_traj,
                            std::uint64_t seed, unsigned threads = 1);

SpinMomentsEstimate estimate_spin_moments(std::span<const SpinPoint> cloud);

/// Two-mode analog of run_single_loop (theta = nullopt) or run_pretwist_loop.
/// theta is a spin rotation angle. The signal is N_d = 2 J_z after a final
/// rotate(pi/2); phases +-phi_step per loop give the finite difference.
SensitivityEstimate two_mode_tw_sensitivity(const TwoModeParams& p, std::optional<double> theta,
                                            std::size_t n_traj, std::uint64_t seed, double phi_step = 0.05,
                                            double radius = 1.0, unsigned threads = 1);

}  // namespace ringgyro
