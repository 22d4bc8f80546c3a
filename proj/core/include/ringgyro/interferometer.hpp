#pragma once
// Ring-gyroscope sequences driven by truncated-Wigner ensembles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringgyro/grid.hpp"
#include "ringgyro/propagator.hpp"
#include "ringgyro/statistics.hpp"

namespace ringgyro {

enum class Scheme { single_loop, pretwist, single_component_barrier };

enum class PacketShape { soliton, gaussian, sech };

/// How the pre-twist angle is handed to the field splitter. `spin` treats
/// theta as the pseudo-spin rotation angle and mixes with theta/2; `field`
/// passes theta straight to the cos/sin mixing.
enum class ThetaConvention { spin, field };

const char* to_string(Scheme scheme) noexcept;
const char* to_string(PacketShape shape) noexcept;
const char* to_string(ThetaConvention convention) noexcept;

struct RingConfig {
  std::size_t n_points = 512;
  double radius = 1.0;
  double n_total = 1e4;
  long winding = 80;  // n = k0 R
  double g0 = 0.0;
  /// A soliton needs g0 < 0; at g0 = 0 a soliton request falls back to a
  /// Gaussian of sigma = packet_width.
  PacketShape shape = PacketShape::soliton;
  double packet_width = 0.25;  // Gaussian sigma, or 1/kappa for sech
  std::size_t n_traj = 200;
  std::uint64_t master_seed = 1;
  std::size_t steps_per_loop = 2000;
  double phi_omega_step = 0.05;  // 4 pi R^2 dOmega
  unsigned threads = 0;
  bool common_random_numbers = true;
  ThetaConvention theta_convention = ThetaConvention::spin;

  // Single-component barrier scheme.
  double barrier_width = 1e-2;
  double barrier_height = 0.0;  // <= 0: tune to 50% reflection
  double launch_offset = 1.5707963267948966;  // packet starts at -launch_offset, in (0, pi R / 2]
  /// 4 pi R^2 Omega_b of the working point. The barrier sends both arms
  /// through the same r t product, so Omega = 0 sits on a fringe extremum;
  /// pi / 2 puts the scan at mid fringe.
  double barrier_bias_phase = 1.5707963267948966;

  double k0() const noexcept;
  /// T = 2 pi R^2 / n.
  double loop_time() const noexcept;
  double dt() const noexcept;
  double d_omega() const noexcept;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SensitivityRecord {
  double g0 = 0.0;
  Scheme scheme = Scheme::single_loop;
  std::optional<double> theta;
  double delta_omega = 0.0;
  double delta_omega_stderr = 0.0;
  std::size_t n_traj = 0;
  double d_omega = 0.0;
  std::uint64_t master_seed = 0;
  SensitivityEstimate estimate;
  std::vector<std::string> warnings;
};

/// Coherent amplitude of each component at t = 0: sqrt(N_t / 2) times the
/// unit-norm packet, carrying +k0 and -k0. The first splitter is folded into
/// this state.
TwoComponentField ring_initial_means(const RingConfig& config, const Grid1D& grid);

/// Sample, evolve one loop, final 50/50 splitter, Delta Omega.
SensitivityRecord run_single_loop(const RingConfig& config);

/// Evolve T, variable splitter, evolve T, final 50/50 splitter.
SensitivityRecord run_pretwist_loop(const RingConfig& config, double theta);

/// Raw per-trajectory scan behind run_single_loop / run_pretwist_loop
/// (theta = nullopt for the single loop).
OmegaScan scan_two_component(const RingConfig& config, std::optional<double> theta);

/// Single field launched at -launch_offset towards a barrier at 0; the barrier
/// splits and, after one circuit, recombines the packet. Signal is N_L - N_R
/// about the barrier at t = T + 2 d / k0, scanned about the bias rotation
/// barrier_bias_phase / (4 pi R^2).
SensitivityRecord run_single_component_barrier_loop(const RingConfig& config);

/// Barrier height used by run_single_component_barrier_loop.
double single_component_barrier_height(const RingConfig& config);

}  // namespace ringgyro
