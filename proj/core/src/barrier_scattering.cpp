#include "ringgyro/barrier_scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ringgyro/errors.hpp"
#include "ringgyro/initial_states.hpp"

namespace ringgyro {

ScatteringSetup line_scattering_setup(double k, double barrier_width, double sigma, double offset,
                                      double length, std::size_t n_points, double dt) {
  if (!(k > 0.0)) throw ContractViolation("line_scattering_setup: k must be positive");
  Grid1D grid = Grid1D::line(n_points, length);
  ComplexField packet = gaussian_packet(grid, -offset, sigma, k);
  ScatteringSetup s{grid, packet};
  s.barrier_width = barrier_width;
  s.duration = 2.0 * offset / k;
  s.dt = dt;
  return s;
}

double reflection_probability(const ScatteringSetup& setup, double height) {
  EvolutionSpec spec = EvolutionSpec::gpe(0.0, 1.0, setup.dt);
  spec.barrier = Barrier{height, setup.barrier_width, setup.barrier_center};
  SplitStepPropagator prop(setup.grid, spec);
  ComplexField f = setup.packet;
  prop.advance(f, setup.duration);
  const auto rho = spectral_density(f);
  const auto k = setup.grid.wavenumbers();
  double back = 0.0, total = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    total += rho[j];
    if (k[j] * setup.incident_sign < 0.0) back += rho[j];
  }
  return back / total;
}

BarrierTuning tune_barrier(const ScatteringSetup& setup, double target_low, double target_high) {
  if (!(0.0 < target_low && target_low < target_high && target_high < 1.0)) {
    throw ContractViolation("tune_barrier: need 0 < target_low < target_high < 1");
  }
  BarrierTuning t;
  auto eval = [&](double h) {
    ++t.evaluations;
    return reflection_probability(setup, h);
  };
  double lo = 0.0;
  double hi = 1.0;
  double r_hi = eval(hi);
  for (int i = 0; r_hi <= target_high; ++i) {
    if (r_hi >= target_low) return {hi, r_hi, t.evaluations};
    if (i >= 40) throw TuningError("tune_barrier: reflection never exceeds the target window");
    lo = hi;
    hi *= 2.0;
    r_hi = eval(hi);
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double r = eval(mid);
    if (r >= target_low && r <= target_high) return {mid, r, t.evaluations};
    (r < target_low ? lo : hi) = mid;
  }
  std::ostringstream msg;
  msg << "tune_barrier: bisection stalled in [" << lo << ", " << hi << "]";
  throw TuningError(msg.str());
}

double tune_barrier(double k, double w) { return tune_barrier(line_scattering_setup(k, w)).height; }

Grid1D CollisionConfig::grid() const { return Grid1D::line(n_points, length); }

EvolutionSpec CollisionConfig::evolution(double height) const {
  const double g = kind == CollisionCase::attractive_soliton ? g0n : 0.0;
  EvolutionSpec spec = EvolutionSpec::gpe(g, 1.0, dt);
  spec.barrier = Barrier{height, barrier_width, 0.0};
  return spec;
}

void CollisionConfig::validate() const {
  if (n_points < 16) throw ConfigError("n_points: too small");
  if (!(length > 0.0)) throw ConfigError("length: must be positive");
  if (!(x0 > 0.0) || 2.0 * x0 >= length) throw ConfigError("x0: packets must start inside the box");
  if (!(k > 0.0)) throw ConfigError("k: must be positive");
  if (!(barrier_width > 0.0)) throw ConfigError("barrier_width: must be positive");
  if (length / static_cast<double>(n_points) > barrier_width / 3.0) {
    throw ConfigError("n_points: grid spacing must resolve the barrier (dx <= w/3)");
  }
  if (kind == CollisionCase::attractive_soliton && !(g0n < 0.0)) {
    throw ConfigError("g0n: the soliton case needs attractive interactions (g0 N < 0)");
  }
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (!(t_final > 0.0)) throw ConfigError("t_final: must be positive");
  if (n_samples < 2) throw ConfigError("n_samples: need at least two");
  if (!(dphi > 0.0)) throw ConfigError("dphi: must be positive");
}

namespace {

std::pair<ComplexField, ComplexField> packets(const CollisionConfig& c, const Grid1D& grid) {
  if (c.kind == CollisionCase::noninteracting_gaussian) {
    return {gaussian_packet(grid, -c.x0, c.sigma, c.k), gaussian_packet(grid, c.x0, c.sigma, -c.k)};
  }
  const double kappa = std::abs(c.g0n) / 4.0;
  return {sech_packet(grid, -c.x0, kappa, c.k), sech_packet(grid, c.x0, kappa, -c.k)};
}

double height_of(const CollisionConfig& c) {
  if (c.barrier_height > 0.0) return c.barrier_height;
  return tune_barrier(c.k, c.barrier_width);
}

ComplexField combine(const ComplexField& l, const ComplexField& r, double phi, double scale) {
  ComplexField f = l + std::polar(1.0, phi) * r;
  f *= scale;
  return f;
}

}  // namespace

ComplexField collision_initial_state(const CollisionConfig& config, double phi) {
  config.validate();
  const Grid1D grid = config.grid();
  auto [l, r] = packets(config, grid);
  return superposition_pair(l, r, phi);
}

std::vector<double> collision_population_curve(const CollisionConfig& config, double height,
                                               const std::vector<double>& phis) {
  config.validate();
  const Grid1D grid = config.grid();
  SplitStepPropagator prop(grid, config.evolution(height));
  std::vector<double> out;
  out.reserve(phis.size());
  if (config.kind == CollisionCase::noninteracting_gaussian) {
    auto [l0, r0] = packets(config, grid);
    ComplexField l = l0, r = r0;
    prop.advance(l, config.t_final);
    prop.advance(r, config.t_final);
    for (double phi : phis) {
      const double s = 1.0 / std::sqrt(norm_particles(l0 + std::polar(1.0, phi) * r0));
      out.push_back(2.0 * probability_left(combine(l, r, phi, s)) - 1.0);
    }
    return out;
  }
  for (double phi : phis) {
    ComplexField f = collision_initial_state(config, phi);
    prop.advance(f, config.t_final);
    out.push_back(2.0 * probability_left(f) - 1.0);
  }
  return out;
}

double balanced_phase(const CollisionConfig& config, double height) {
  auto f = [&](double phi) { return 0.5 * collision_population_curve(config, height, {phi}).front(); };
  constexpr int n_scan = 12;
  std::vector<double> phis(n_scan);
  for (int j = 0; j < n_scan; ++j) phis[j] = -std::numbers::pi + 2.0 * std::numbers::pi * j / n_scan;
  std::vector<double> vals = collision_population_curve(config, height, phis);
  for (double& v : vals) v *= 0.5;

  int best = -1;
  double steepest = 0.0;
  for (int j = 0; j < n_scan; ++j) {
    const double a = vals[j];
    const double b = vals[(j + 1) % n_scan];
    if ((a <= 0.0) != (b <= 0.0) && std::abs(b - a) > steepest) {
      steepest = std::abs(b - a);
      best = j;
    }
  }
  if (best < 0) throw TuningError("balanced_phase: P_L never crosses 1/2");

  double a = phis[best];
  double b = a + 2.0 * std::numbers::pi / n_scan;
  double fa = vals[best];
  double fb = vals[(best + 1) % n_scan];
  int side = 0;
  for (int i = 0; i < 60; ++i) {
    const double c = (a * fb - b * fa) / (fb - fa);
    const double fc = f(c);
    if (std::abs(fc) < 1e-8) return c;
    if ((fc <= 0.0) == (fa <= 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  throw TuningError("balanced_phase: root refinement did not converge");
}

CollisionSeries collision_fisher_series(const CollisionConfig& config) {
  config.validate();
  CollisionSeries out;
  out.barrier_height = height_of(config);
  out.phi = config.phi ? *config.phi : balanced_phase(config, out.barrier_height);

  const Grid1D grid = config.grid();
  SplitStepPropagator prop(grid, config.evolution(out.barrier_height));
  std::vector<double> times(config.n_samples);
  for (std::size_t j = 0; j < times.size(); ++j) {
    times[j] = config.t_final * static_cast<double>(j) / static_cast<double>(times.size() - 1);
  }
  const double phis[3] = {out.phi, out.phi + config.dphi, out.phi - config.dphi};
  std::vector<std::vector<ComplexField>> runs;
  if (config.kind == CollisionCase::noninteracting_gaussian) {
    auto [l0, r0] = packets(config, grid);
    const auto ls = evolve(prop, l0, config.t_final, times);
    const auto rs = evolve(prop, r0, config.t_final, times);
    for (double phi : phis) {
      const double s = 1.0 / std::sqrt(norm_particles(l0 + std::polar(1.0, phi) * r0));
      std::vector<ComplexField> run;
      for (std::size_t j = 0; j < times.size(); ++j) run.push_back(combine(ls[j], rs[j], phi, s));
      runs.push_back(std::move(run));
    }
  } else {
    for (double phi : phis) runs.push_back(evolve(prop, collision_initial_state(config, phi), config.t_final, times));
  }

  double reference = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < times.size(); ++j) {
    PhiDerivativeBundle b{runs[0][j], runs[1][j], runs[2][j], config.dphi};
    FisherSample s = fisher_sample(b, times[j], 0.0, reference);
    if (j == 0) reference = s.qfi;
    out.samples.push_back(s);
  }
  return out;
}

}  // namespace ringgyro
