#include "ringgyro/initial_states.hpp"

#include <cmath>
#include <sstream>

#include "ringgyro/errors.hpp"

namespace ringgyro {

namespace {

// Signed distance x - x0 folded into [-L/2, L/2).
double wrapped_offset(const Grid1D& grid, double x, double x0) {
  const double L = grid.length();
  double d = std::fmod(x - x0 + 0.5 * L, L);
  if (d < 0) d += L;
  return d - 0.5 * L;
}

}  // namespace

double SolitonParams::chemical_potential() const noexcept { return -n_s * n_s * g0 * g0 / 8.0; }

double SolitonParams::inverse_width() const noexcept {
  return std::sqrt(2.0 * std::abs(chemical_potential()));
}

void SolitonParams::validate(double radius) const {
  if (!(n_s > 0.0)) throw ContractViolation("SolitonParams: n_s must be positive");
  if (g0 > 0.0) throw ContractViolation("SolitonParams: g0 must be <= 0 for a bright soliton");
  const double winding = k0 * radius;
  if (std::abs(winding - std::round(winding)) > 1e-9) {
    throw ContractViolation("SolitonParams: k0 R must be an integer on a ring");
  }
}

ComplexField gaussian_packet(const Grid1D& grid, double x0, double sigma, double k, double phase) {
  if (!(sigma > 3.0 * grid.spacing())) {
    std::ostringstream msg;
    msg << "gaussian_packet: sigma=" << sigma << " is not resolvable (need > 3*dx = "
        << 3.0 * grid.spacing() << ")";
    throw ResolutionError(msg.str());
  }
  if (!(6.0 * sigma < grid.length())) {
    throw ResolutionError("gaussian_packet: packet does not fit in the box (need 6 sigma < length)");
  }
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.x(i);
    const double d = wrapped_offset(grid, x, x0);
    v[i] = std::exp(-d * d / (sigma * sigma)) * std::polar(1.0, k * x + phase);
  }
  ComplexField f(grid, std::move(v));
  normalize(f);
  return f;
}

ComplexField sech_packet(const Grid1D& grid, double x0, double kappa, double k, double phase) {
  const double width = kappa > 0.0 ? 1.0 / kappa : INFINITY;
  if (!(width > 3.0 * grid.spacing()) || !(width < grid.length() / 8.0)) {
    std::ostringstream msg;
    msg << "sech_packet: width " << width << " outside resolvable range (" << 3.0 * grid.spacing()
        << ", " << grid.length() / 8.0 << ")";
    throw ResolutionError(msg.str());
  }
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.x(i);
    const double d = wrapped_offset(grid, x, x0);
    v[i] = (1.0 / std::cosh(kappa * d)) * std::polar(1.0, k * x + phase);
  }
  ComplexField f(grid, std::move(v));
  normalize(f);
  return f;
}

ComplexField sech_soliton(const Grid1D& grid, const SolitonParams& params, int sign, double x0) {
  if (sign != 1 && sign != -1) throw ContractViolation("sech_soliton: sign must be +1 or -1");
  params.validate(grid.radius());
  return sech_packet(grid, x0, params.inverse_width(), sign * params.k0);
}

ComplexField superposition_pair(const ComplexField& left, const ComplexField& right, double phi) {
  const double ov = std::abs(overlap(left, right));
  if (ov >= 1e-3) {
    std::ostringstream msg;
    msg << "superposition_pair: inputs are not orthogonal, |<L|R>| = " << ov;
    throw PreconditionError(msg.str());
  }
  ComplexField out = left;
  const Complex w = std::polar(1.0, phi);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (left[i] + w * right[i]) / std::sqrt(2.0);
  normalize(out);
  return out;
}

ComplexField sample_wigner_coherent(const ComplexField& mean_field, GaussianStream& rng) {
  ComplexField out = mean_field;
  const double sd = std::sqrt(0.25 / mean_field.grid().spacing());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [a, b] = rng.normal_pair();
    out[i] += Complex(sd * a, sd * b);
  }
  return out;
}

ComplexField sample_wigner_coherent(const ComplexField& unit_mode, double n_atoms, GaussianStream& rng) {
  if (n_atoms < 0.0) throw ContractViolation("sample_wigner_coherent: negative atom number");
  return sample_wigner_coherent(std::sqrt(n_atoms) * unit_mode, rng);
}

}  // namespace ringgyro
