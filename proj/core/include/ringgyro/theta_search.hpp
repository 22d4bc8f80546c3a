#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ringgyro/interferometer.hpp"

namespace ringgyro {

struct ObjectiveValue {
  double value = 0.0;
  double standard_error = 0.0;
};

struct ThetaSearchResult {
  double theta = 0.0;
  ObjectiveValue best;
  /// More than one strict local minimum on the (cyclic) grid.
  bool multimodal = false;
  std::vector<std::pair<double, ObjectiveValue>> evaluations;
  std::vector<std::string> warnings;
};

/// n equally spaced angles covering [-pi, pi).
std::vector<double> theta_grid(std::size_t n);

/// Minimize `objective` over theta.
///
/// Evaluates every grid point and every extra candidate, then runs a
/// golden-section search until the bracket is narrower than `tolerance`. The
/// bracket is the grid cell pair around the grid minimizer, or a window of
/// one eighth of the grid spacing on either side of a candidate that beats
/// the whole grid. The returned theta is the
/// best point evaluated anywhere, so it is never worse than the grid or the
/// candidates. Non-finite values rank last.
ThetaSearchResult optimize_theta(const std::function<ObjectiveValue(double)>& objective,
                                 std::span<const double> grid, double tolerance = 1e-3,
                                 std::span<const double> candidates = {});

struct PretwistOptimum {
  ThetaSearchResult search;
  SensitivityRecord record;
};

/// optimize_theta over run_pretwist_loop; every evaluation reuses
/// config.master_seed, so the landscape is sampled with common noise.
PretwistOptimum optimize_pretwist_theta(const RingConfig& config, std::span<const double> grid,
                                        double tolerance = 1e-3, std::span<const double> candidates = {});

}  // namespace ringgyro
