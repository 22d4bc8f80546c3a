#include "ringgyro/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ringgyro/csv.hpp"
#include "ringgyro/errors.hpp"

namespace ringgyro {

double Barrier::potential(const Grid1D& grid, double x) const noexcept {
  const double L = grid.length();
  double d = std::fmod(x - center + 0.5 * L, L);
  if (d < 0) d += L;
  d -= 0.5 * L;
  return height * std::exp(-d * d / (width * width)) / (width * std::sqrt(std::numbers::pi));
}

EvolutionSpec EvolutionSpec::gpe(double g0, double n_atoms, double dt) {
  EvolutionSpec s;
  s.g0 = g0;
  s.nonlinear_scale = n_atoms;
  s.tw_correction = false;
  s.dt = dt;
  return s;
}

EvolutionSpec EvolutionSpec::truncated_wigner(double g0, double dt) {
  EvolutionSpec s;
  s.g0 = g0;
  s.nonlinear_scale = 1.0;
  s.tw_correction = true;
  s.dt = dt;
  return s;
}

bool EvolutionSpec::is_free() const noexcept {
  return g0 == 0.0 && (!barrier || barrier->height == 0.0);
}

double EvolutionSpec::max_kinetic_phase(const Grid1D& grid) const noexcept {
  double m = 0.0;
  const double R = grid.radius();
  for (double k : grid.wavenumbers()) m = std::max(m, std::abs(0.5 * k * k - omega * k * R));
  return m * dt;
}

SplitStepPropagator::SplitStepPropagator(Grid1D grid, EvolutionSpec spec)
    : grid_(std::move(grid)), spec_(std::move(spec)) {
  if (!(spec_.dt > 0.0) || !std::isfinite(spec_.dt)) {
    throw ContractViolation("SplitStepPropagator: dt must be positive");
  }
  if (spec_.barrier && !(spec_.barrier->width > 0.0)) {
    throw ContractViolation("SplitStepPropagator: barrier width must be positive");
  }
  if (spec_.tw_correction && !spec_.is_free() && spec_.max_kinetic_phase(grid_) >= std::numbers::pi) {
    std::ostringstream msg;
    msg << "SplitStepPropagator: kinetic phase per step " << spec_.max_kinetic_phase(grid_)
        << " >= pi; reduce dt";
    throw ContractViolation(msg.str());
  }
  const std::size_t n = grid_.size();
  potential_.assign(n, 0.0);
  if (spec_.barrier) {
    for (std::size_t i = 0; i < n; ++i) potential_[i] = spec_.barrier->potential(grid_, grid_.x(i));
  }
  kinetic_rate_.resize(n);
  const auto k = grid_.wavenumbers();
  const double R = grid_.radius();
  for (std::size_t j = 0; j < n; ++j) kinetic_rate_[j] = 0.5 * k[j] * k[j] - spec_.omega * k[j] * R;
}

std::size_t SplitStepPropagator::steps_for(double duration) const {
  if (duration <= 0.0) return 0;
  if (spec_.is_free()) return 1;
  const double ratio = duration / spec_.dt;
  auto n = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
  return std::max<std::size_t>(n, 1);
}

void SplitStepPropagator::advance(ComplexField& field, double duration) const {
  if (!(field.grid() == grid_)) throw ContractViolation("SplitStepPropagator: field on a different grid");
  if (duration < 0.0 || !std::isfinite(duration)) {
    throw ContractViolation("SplitStepPropagator: duration must be finite and >= 0");
  }
  if (duration == 0.0) return;
  if (spec_.is_free()) {
    run_steps(field, 1, duration);
    return;
  }
  const std::size_t n = steps_for(duration);
  run_steps(field, n, duration / static_cast<double>(n));
}

void SplitStepPropagator::advance(TwoComponentField& field, double duration) const {
  advance(field.plus, duration);
  advance(field.minus, duration);
}

void SplitStepPropagator::run_steps(ComplexField& field, std::size_t n_steps, double h) const {
  const std::size_t n = grid_.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const FftPlan& fft = grid_.fft();
  auto psi = field.values();

  if (spec_.is_free()) {
    fft.forward(psi);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= std::polar(inv_n, -kinetic_rate_[j] * h);
    fft.inverse(psi);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(psi[i].real()) || !std::isfinite(psi[i].imag())) {
        throw NumericalBlowUp("free propagation produced a non-finite amplitude", 0);
      }
    }
    return;
  }

  std::vector<Complex> half(n), full(n);
  for (std::size_t j = 0; j < n; ++j) {
    half[j] = std::polar(inv_n, -0.5 * kinetic_rate_[j] * h);
    full[j] = std::polar(inv_n, -kinetic_rate_[j] * h);
  }
  const double g = spec_.g0 * spec_.nonlinear_scale;
  const double shift = spec_.tw_correction ? 1.0 / grid_.spacing() : 0.0;

  fft.forward(psi);
  for (std::size_t j = 0; j < n; ++j) psi[j] *= half[j];
  for (std::size_t s = 0; s < n_steps; ++s) {
    fft.inverse(psi);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = std::norm(psi[i]);
      total += rho;
      psi[i] *= std::polar(1.0, -h * (potential_[i] + g * (rho - shift)));
    }
    if (!std::isfinite(total)) {
      throw NumericalBlowUp("split-step propagation produced a non-finite field", s);
    }
    fft.forward(psi);
    const auto& k_factor = (s + 1 == n_steps) ? half : full;
    for (std::size_t j = 0; j < n; ++j) psi[j] *= k_factor[j];
  }
  fft.inverse(psi);
}

double energy(const ComplexField& field, const EvolutionSpec& spec) {
  const Grid1D& grid = field.grid();
  const auto c = spectrum(field);
  const auto k = grid.wavenumbers();
  const double R = grid.radius();
  double e = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) e += (0.5 * k[j] * k[j] - spec.omega * k[j] * R) * std::norm(c[j]);
  const double g = spec.g0 * spec.nonlinear_scale;
  double local = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double rho = std::norm(field[i]);
    const double v = spec.barrier ? spec.barrier->potential(grid, grid.x(i)) : 0.0;
    local += v * rho + 0.5 * g * rho * rho;
  }
  return e + local * grid.spacing();
}

namespace {

void check_times(double t_final, std::span<const double> times) {
  if (t_final < 0.0) throw ContractViolation("evolve: t_final must be >= 0");
  double prev = 0.0;
  for (double t : times) {
    if (t < prev) throw ContractViolation("evolve: callback times must be sorted and >= 0");
    if (t > t_final * (1.0 + 1e-12) + 1e-15) throw ContractViolation("evolve: callback time beyond t_final");
    prev = t;
  }
}

template <typename Field>
std::vector<Field> evolve_impl(const SplitStepPropagator& prop, Field field, double t_final,
                               std::span<const double> times, std::vector<PropagationLogEntry>* log) {
  check_times(t_final, times);
  std::vector<double> targets(times.begin(), times.end());
  if (targets.empty()) targets.push_back(t_final);
  std::vector<Field> out;
  out.reserve(targets.size());
  double t = 0.0;
  for (double target : targets) {
    prop.advance(field, target - t);
    t = target;
    out.push_back(field);
    if constexpr (std::is_same_v<Field, ComplexField>) {
      if (log) log->push_back({t, norm_particles(field), energy(field, prop.spec())});
    }
  }
  return out;
}

}  // namespace

std::vector<ComplexField> evolve(const SplitStepPropagator& propagator, ComplexField field,
                                 double t_final, std::span<const double> callback_times,
                                 std::vector<PropagationLogEntry>* log) {
  return evolve_impl(propagator, std::move(field), t_final, callback_times, log);
}

std::vector<TwoComponentField> evolve(const SplitStepPropagator& propagator, TwoComponentField field,
                                      double t_final, std::span<const double> callback_times) {
  return evolve_impl<TwoComponentField>(propagator, std::move(field), t_final, callback_times, nullptr);
}

void write_propagation_log(std::ostream& out, std::span<const PropagationLogEntry> log) {
  CsvWriter csv(out, {"t", "norm", "energy"});
  for (const auto& e : log) csv.row({e.t, e.norm, e.energy});
}

double free_mode_phase(long q, double omega, double t, double radius) noexcept {
  const double qd = static_cast<double>(q);
  return (qd * qd / (2.0 * radius * radius) - omega * qd) * t;
}

}  // namespace ringgyro
