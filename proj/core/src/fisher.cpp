#include "ringgyro/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ringgyro/errors.hpp"

namespace ringgyro {

void PhiDerivativeBundle::validate() const {
  if (!(dphi > 0.0)) throw ContractViolation("PhiDerivativeBundle: dphi must be positive");
  require_same_grid(center, plus, "PhiDerivativeBundle");
  require_same_grid(center, minus, "PhiDerivativeBundle");
}

double qfi_single_particle(const PhiDerivativeBundle& bundle) {
  bundle.validate();
  for (const ComplexField* f : {&bundle.center, &bundle.plus, &bundle.minus}) {
    const double n = norm_particles(*f);
    if (std::abs(n - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "qfi_single_particle: field not normalized (norm " << n << ")";
      throw PreconditionError(msg.str());
    }
  }
  const std::size_t n = bundle.center.size();
  const double inv = 1.0 / (2.0 * bundle.dphi);
  const double dx = bundle.center.grid().spacing();
  double dd = 0.0;
  Complex pd{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Complex d = (bundle.plus[i] - bundle.minus[i]) * inv;
    dd += std::norm(d);
    pd += std::conj(bundle.center[i]) * d;
  }
  const double fq = 4.0 * (dd * dx - std::norm(pd * dx));
  if (fq < -1e-8) {
    std::ostringstream msg;
    msg << "qfi_single_particle: negative QFI " << fq << " (finite-difference failure)";
    throw NumericalDerivativeError(msg.str());
  }
  return std::max(fq, 0.0);
}

double cfi_two_outcome(double p_left_minus, double p_left_center, double p_left_plus, double dphi) {
  if (!(dphi > 0.0)) throw ContractViolation("cfi_two_outcome: dphi must be positive");
  if (p_left_center < 1e-6 || p_left_center > 1.0 - 1e-6) {
    std::ostringstream msg;
    msg << "cfi_two_outcome: degenerate outcome probability P_L = " << p_left_center;
    throw DegenerateOutcome(msg.str());
  }
  const double d = (p_left_plus - p_left_minus) / (2.0 * dphi);
  // dP_R = -dP_L
  return d * d / p_left_center + d * d / (1.0 - p_left_center);
}

double default_density_floor(const PhiDerivativeBundle& bundle) {
  double peak = 0.0;
  for (const auto& v : bundle.center.values()) peak = std::max(peak, std::norm(v));
  return 1e-12 * peak;
}

double cfi_density(const PhiDerivativeBundle& bundle, double floor) {
  bundle.validate();
  if (!(floor > 0.0)) throw ContractViolation("cfi_density: floor must be positive");
  const double inv = 1.0 / (2.0 * bundle.dphi);
  double sum = 0.0;
  for (std::size_t i = 0; i < bundle.center.size(); ++i) {
    const double rho = std::norm(bundle.center[i]);
    if (rho <= floor) continue;
    const double drho = (std::norm(bundle.plus[i]) - std::norm(bundle.minus[i])) * inv;
    sum += drho * drho / rho;
  }
  return sum * bundle.center.grid().spacing();
}

double probability_left(const ComplexField& field, double partition) {
  const Grid1D& g = field.grid();
  const double dx = g.spacing();
  double left = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double rho = std::norm(field[i]);
    total += rho;
    // Each sample owns the cell [x - dx/2, x + dx/2).
    const double frac = std::clamp((partition - g.x(i)) / dx + 0.5, 0.0, 1.0);
    left += frac * rho;
  }
  if (!(total > 0.0)) throw PreconditionError("probability_left: empty field");
  return left / total;
}

RichardsonCheck richardson_check(const std::function<double(double)>& estimator, double dphi,
                                 double tolerance) {
  RichardsonCheck r;
  r.coarse = estimator(dphi);
  r.fine = estimator(0.5 * dphi);
  r.extrapolated = (4.0 * r.fine - r.coarse) / 3.0;
  const double scale = std::max({std::abs(r.fine), std::abs(r.coarse), 1e-300});
  r.relative_change = std::abs(r.fine - r.coarse) / scale;
  r.converged = r.relative_change < tolerance;
  return r;
}

FisherSample fisher_sample(const PhiDerivativeBundle& bundle, double t, double partition,
                           double reference_qfi) {
  FisherSample s;
  s.t = t;
  s.qfi = qfi_single_particle(bundle);
  s.p_left = probability_left(bundle.center, partition);
  s.cfi = cfi_two_outcome(probability_left(bundle.minus, partition), s.p_left,
                          probability_left(bundle.plus, partition), bundle.dphi);
  s.density_floor = default_density_floor(bundle);
  s.cfi_density = cfi_density(bundle, s.density_floor);
  const double reference = std::isnan(reference_qfi) ? s.qfi : reference_qfi;
  const double limit = std::max(s.qfi, reference) * (1.0 + 1e-3);
  s.qcrb_violation = s.cfi > reference * (1.0 + 1e-3) || s.cfi_density > limit;
  s.qfi_growth = s.qfi > reference * (1.0 + 1e-3);
  return s;
}

}  // namespace ringgyro
