#pragma once
// Flat key = value run configuration.
//
//   # comment
//   experiment = ring_sweep
//   master_seed = 17
//   g0_list = 0, -0.002, -0.004
//   chi_t_list = 0:-0.0076:20      # start:stop:count, endpoints included
//
// Unknown keys, repeated keys and unparsable values raise ConfigError naming
// the key and the line.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringgyro/barrier_scattering.hpp"
#include "ringgyro/interferometer.hpp"

namespace ringgyro {

enum class Experiment { barrier_fisher, ring_sweep, pretwist_sweep, two_mode_curves, quasiprob, theta_opt, barrier_tune };
enum class ThetaPolicy { fixed, theta_chi, optimize };
enum class CollisionSelection { noninteracting_gaussian, attractive_soliton, both };

const char* to_string(Experiment e) noexcept;
const char* to_string(ThetaPolicy p) noexcept;
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::ring_sweep;
  std::optional<std::uint64_t> master_seed;
  std::string out_dir;
  unsigned threads = 0;

  // Ring gyroscope.
  double n_total = 1e4;
  long winding = 80;
  double radius = 1.0;
  std::vector<double> g0_list{0.0};
  Scheme scheme = Scheme::single_loop;
  PacketShape shape = PacketShape::soliton;
  double packet_width = 0.25;
  std::size_t n_points = 512;
  std::size_t barrier_n_points = 2048;
  std::size_t steps_per_loop = 2000;
  std::size_t n_traj = 200;
  double phi_omega_step = 0.05;
  bool common_random_numbers = true;
  ThetaConvention theta_convention = ThetaConvention::spin;
  double launch_offset = 1.5707963267948966;
  double barrier_bias_phase = 1.5707963267948966;

  // Pre-twist.
  ThetaPolicy theta_policy = ThetaPolicy::theta_chi;
  double theta = 0.0;
  std::size_t theta_grid_points = 12;
  double theta_tolerance = 1e-3;

  // Barrier scattering and collisions.
  double sigma = 0.5;
  double k = 10.0;
  double barrier_width = 1e-2;
  double barrier_height = 0.0;  // <= 0: tune
  double x0 = 5.0;
  double line_length = 40.0;
  std::size_t line_points = 16384;
  double line_dt = 1e-4;
  double g0n = -8.0;
  double t_final = 1.5;
  std::size_t n_samples = 41;
  double dphi = 1e-3;
  std::size_t phi_points = 25;
  CollisionSelection collisions = CollisionSelection::both;

  // Two-mode model.
  std::vector<double> chi_t_list;
  std::size_t two_mode_traj = 4000;

  /// Defaults of a recipe: quasiprob uses N_t = 100 and chi T = -0.03, -0.06;
  /// two_mode_curves sweeps chi T from 0 to -7.6e-3.
  static ExperimentConfig defaults(Experiment e);

  /// Ring parameters for one g0.
  RingConfig ring(double g0) const;
  CollisionConfig collision(CollisionCase kind) const;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  /// Every key with its resolved value, in registry order. Parsing the echo
  /// reproduces this config exactly.
  std::vector<std::pair<std::string, std::string>> echo() const;
  std::string echo_text() const;
};

/// Parse config text on top of `base`. `source` names the input in messages.
ExperimentConfig parse_experiment_config(std::istream& in, const ExperimentConfig& base,
                                         std::string_view source = "config");

/// Reads the file; its `experiment` key (if present) must match `expected`.
ExperimentConfig load_experiment_config(const std::string& path, Experiment expected);

/// Names of all recognised keys.
std::vector<std::string> config_keys();

}  // namespace ringgyro
