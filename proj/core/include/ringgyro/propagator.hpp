#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ringgyro/grid.hpp"

namespace ringgyro {

/// Narrow repulsive barrier V(x) = height * exp(-(x-center)^2/width^2) / (width sqrt(pi)).
///
/// The profile integrates to `height`. Distances wrap around the periodic box.
struct Barrier {
  double height = 0.0;
  double width = 1e-2;
  double center = 0.0;

  double potential(const Grid1D& grid, double x) const noexcept;
};

/// Everything a split-step run needs besides the field.
///
/// The position-space phase per unit time is
///   V(x) + g0 * nonlinear_scale * (|psi|^2 - (tw_correction ? 1/dx : 0)).
/// For a unit-norm GPE wavefunction of N atoms use nonlinear_scale = N; for
/// truncated-Wigner fields (normalized to particle number) use 1 together with
/// tw_correction. The kinetic factor on a ring of radius R is
///   exp[-i (k^2/2 - Omega k R) dt],
/// i.e. the rotating-frame term -Omega L_z is applied exactly in k-space.
struct EvolutionSpec {
  double g0 = 0.0;
  double nonlinear_scale = 1.0;
  bool tw_correction = false;
  double omega = 0.0;
  std::optional<Barrier> barrier;
  double dt = 1e-4;

  static EvolutionSpec gpe(double g0, double n_atoms, double dt);
  static EvolutionSpec truncated_wigner(double g0, double dt);

  /// No nonlinearity and no barrier: propagation is diagonal in k-space.
  bool is_free() const noexcept;

  /// Largest |kinetic + rotation phase| accumulated by any grid mode in one step.
  double max_kinetic_phase(const Grid1D& grid) const noexcept;
};

/// Second-order (Strang) split-step Fourier propagator.
///
/// One step is: half kinetic+rotation in k-space, full potential+nonlinear
/// phase in x-space, half kinetic+rotation. Consecutive half steps are fused,
/// so a run of n steps costs n forward and n inverse FFTs. When spec.is_free()
/// the whole duration is taken as a single exact k-space step.
///
/// Truncated-Wigner runs populate every mode with noise, so for those the
/// constructor requires max_kinetic_phase < pi; GPE wavefunctions are
/// band limited and are not subject to that check.
class SplitStepPropagator {
 public:
  SplitStepPropagator(Grid1D grid, EvolutionSpec spec);

  const Grid1D& grid() const noexcept { return grid_; }
  const EvolutionSpec& spec() const noexcept { return spec_; }

  /// Number of equal substeps (each <= spec.dt) used to cover `duration`.
  std::size_t steps_for(double duration) const;

  /// Evolve by exactly `duration` >= 0. Throws NumericalBlowUp on NaN/Inf.
  void advance(ComplexField& field, double duration) const;
  /// Both components; g_{+-} = 0 so they evolve independently.
  void advance(TwoComponentField& field, double duration) const;

  /// A single step of spec.dt.
  void step(ComplexField& field) const { advance(field, spec_.dt); }
  void step(TwoComponentField& field) const { advance(field, spec_.dt); }

 private:
  void run_steps(ComplexField& field, std::size_t n, double h) const;

  Grid1D grid_;
  EvolutionSpec spec_;
  std::vector<double> potential_;
  std::vector<double> kinetic_rate_;  // k^2/2 - Omega k R
};

struct PropagationLogEntry {
  double t = 0.0;
  double norm = 0.0;
  double energy = 0.0;
};

/// Energy functional matching the propagator's Hamiltonian (without the TW
/// vacuum shift): sum_k (k^2/2 - Omega k R)|c_k|^2 + sum_x [V |psi|^2 + g/2 |psi|^4] dx.
double energy(const ComplexField& field, const EvolutionSpec& spec);

/// Snapshots at each time in `callback_times` (sorted, each in [0, t_final]).
/// With no callback times the single snapshot at t_final is returned. When
/// `log` is non-null, one entry per snapshot is appended.
std::vector<ComplexField> evolve(const SplitStepPropagator& propagator, ComplexField field,
                                 double t_final, std::span<const double> callback_times,
                                 std::vector<PropagationLogEntry>* log = nullptr);

std::vector<TwoComponentField> evolve(const SplitStepPropagator& propagator, TwoComponentField field,
                                      double t_final, std::span<const double> callback_times);

/// CSV with columns t,norm,energy.
void write_propagation_log(std::ostream& out, std::span<const PropagationLogEntry> log);

/// Phase of ring mode q after free evolution: (q^2 / (2 R^2) - Omega q) t.
double free_mode_phase(long q, double omega, double t, double radius = 1.0) noexcept;

}  // namespace ringgyro
