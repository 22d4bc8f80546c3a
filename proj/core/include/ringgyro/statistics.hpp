#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ringgyro/grid.hpp"

namespace ringgyro {

/// Initial TW samples of a two-component ensemble.
///
/// Trajectory i draws its noise from derive_seed(master_seed, i), so the
/// ensemble is a pure function of (means, count, master_seed).
struct TrajectoryEnsemble {
  std::vector<TwoComponentField> trajectories;
  std::vector<std::uint64_t> seeds;
  std::uint64_t master_seed = 0;

  std::size_t count() const noexcept { return trajectories.size(); }

  /// Coherent-state samples around mean_plus / mean_minus (amplitudes in
  /// sqrt(atoms)). Throws InsufficientStatistics when count < 2.
  static TrajectoryEnsemble sample(const ComplexField& mean_plus, const ComplexField& mean_minus,
                                   std::size_t count, std::uint64_t master_seed, unsigned threads = 1);
};

/// Sample mean and unbiased variance of a scalar over trajectories.
///
/// `variance` is the raw symmetric-ordered estimate. For a number difference
/// the true quantum variance is variance - ordering_correction.
struct NumberDifferenceStats {
  std::size_t count = 0;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  double ordering_correction = 0.0;

  double quantum_variance() const noexcept { return variance - ordering_correction; }
};

/// Mean, unbiased variance and their standard errors. Summation is
/// compensated and runs in index order. Throws InsufficientStatistics when
/// fewer than two samples are given.
NumberDifferenceStats summarize(std::span<const double> samples, double ordering_correction = 0.0);

/// n_+ - n_- with n_c = sum |psi_c|^2 dx - M/2. The vacuum offsets cancel.
double number_difference(const TwoComponentField& field);

/// N_L - N_R about `partition`, each half corrected by its own M_half / 2.
double split_number_difference(const ComplexField& field, double partition = 0.0);

/// Excess variance of the symmetric-ordered n_+ - n_- over the quantum value,
/// for coherent inputs: M/2 (M/4 per component).
double two_component_ordering_correction(const Grid1D& grid) noexcept;

/// Same for a single field split into two halves: M/4.
double split_ordering_correction(const Grid1D& grid) noexcept;

/// Per-trajectory number differences of an evolved ensemble.
NumberDifferenceStats number_difference_stats(const TrajectoryEnsemble& ensemble);

/// N_d per trajectory at Omega = -dOmega, 0, +dOmega.
struct OmegaScan {
  std::vector<double> minus;
  std::vector<double> zero;
  std::vector<double> plus;
  double d_omega = 0.0;
  double ordering_correction = 0.0;
};

struct SensitivityEstimate {
  double delta_omega = 0.0;
  double delta_omega_stderr = 0.0;
  double slope = 0.0;          // d<N_d>/dOmega
  double slope_stderr = 0.0;
  NumberDifferenceStats at_zero;
  /// The slope is within two standard errors of zero; delta_omega is +inf.
  bool infinite = false;
};

/// Delta Omega = sqrt(Var N_d at Omega = 0) / |slope|.
///
/// The slope is the central difference of <N_d> between the +-dOmega runs.
/// When the two arms have the same length the difference is taken per
/// trajectory (paired samples), which is the common-random-number estimator;
/// otherwise the arms are treated as independent. Standard errors are
/// propagated to first order.
SensitivityEstimate sensitivity(const OmegaScan& scan);

}  // namespace ringgyro
