#include "ringgyro/two_mode.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ringgyro/errors.hpp"
#include "ringgyro/propagator.hpp"

namespace ringgyro {

using Complex = std::complex<double>;

double TwoModeParams::alpha() const noexcept { return std::sqrt(0.5 * n_total); }

void TwoModeParams::validate() const {
  if (!(n_total > 0.0) || !std::isfinite(n_total)) throw ContractViolation("TwoModeParams: n_total must be positive");
  if (!std::isfinite(chi_t)) throw ContractViolation("TwoModeParams: chi_t must be finite");
}

double chi_from_g0(double g0, double n_s) noexcept { return -g0 * g0 * n_s / 4.0; }

double soliton_energy(double n, double k0, double omega, double g0, int sign, double radius) noexcept {
  return (0.5 * k0 * k0 - sign * omega * k0 * radius) * n - g0 * g0 * n * n * n / 24.0;
}

double ring_loop_time(long winding, double radius) {
  if (winding < 1) throw ContractViolation("ring_loop_time: winding must be >= 1");
  return 2.0 * std::numbers::pi * radius * radius / static_cast<double>(winding);
}

double chi_t_from_g0(double g0, double n_total, long winding, double radius) {
  return chi_from_g0(g0, 0.5 * n_total) * ring_loop_time(winding, radius);
}

double g0_from_chi_t(double chi_t, double n_total, long winding, double radius) {
  const double T = ring_loop_time(winding, radius);
  return -std::sqrt(4.0 * std::abs(chi_t) / (0.5 * n_total * T));
}

double var_jy_analytic(const TwoModeParams& p) {
  p.validate();
  const double n = p.n_total;
  const double s = std::sin(p.chi_t);
  return n / 4.0 - n * n / 8.0 * std::expm1(-2.0 * n * s * s);
}

double mean_jx_analytic(const TwoModeParams& p) {
  p.validate();
  return 0.5 * p.n_total * std::exp(-p.n_total * 2.0 * std::pow(std::sin(0.5 * p.chi_t), 2));
}

double benchmark_delta_omega(double n_total, double radius) {
  if (!(n_total > 0.0)) throw ContractViolation("benchmark_delta_omega: n_total must be positive");
  return 1.0 / (4.0 * std::numbers::pi * radius * radius * std::sqrt(n_total));
}

TwoModeSensitivity delta_omega_two_mode(const TwoModeParams& p, double radius) {
  p.validate();
  // cos(x) - 1 = -2 sin^2(x/2), kept in log space.
  const double log_jx = std::log(0.5 * p.n_total) - 2.0 * p.n_total * std::pow(std::sin(0.5 * p.chi_t), 2);
  TwoModeSensitivity r;
  r.log_delta_omega = -std::log(4.0 * std::numbers::pi * radius * radius) + 0.5 * std::log(var_jy_analytic(p)) - log_jx;
  if (r.log_delta_omega > std::log(std::numeric_limits<double>::max())) {
    r.diverging = true;
    r.delta_omega = std::numeric_limits<double>::infinity();
  } else {
    r.delta_omega = std::exp(r.log_delta_omega);
  }
  return r;
}

double gamma(const TwoModeParams& p) {
  p.validate();
  const double n = p.n_total;
  const double s = std::pow(std::sin(p.chi_t), 2);
  if (s == 0.0) return 0.0;
  const double x = 2.0 * s * n;
  const double log_e = x > 50.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
  const double log_r =
      std::log(16.0 * s) + 2.0 * n * (std::cos(p.chi_t) - std::cos(2.0 * p.chi_t)) - 2.0 * log_e;
  return 1.0 / std::sqrt(1.0 + std::exp(log_r));
}

double theta_chi(const TwoModeParams& p) {
  p.validate();
  if (std::sin(p.chi_t) == 0.0) {
    std::ostringstream msg;
    msg << "theta_chi: chi T = " << p.chi_t << " leaves no twist to undo";
    throw UndefinedAngle(msg.str());
  }
  return -std::acos(-gamma(p));
}

std::array<double, 4> theta_candidates(const TwoModeParams& p) {
  const double g = gamma(p);
  return {std::acos(g), std::acos(-g), -std::acos(g), -std::acos(-g)};
}

std::array<double, 2> restoring_angles(const TwoModeParams& p) {
  const SpinMoments m = assemble_spin_moments(coherent_moments(p));
  const double a = std::atan2(-m.jzjy_sym, m.jy2 - m.jz2);
  const double b = a > 0.0 ? a - std::numbers::pi : a + std::numbers::pi;
  return {a, b};
}

CoherentMoments coherent_moments(const TwoModeParams& p) {
  p.validate();
  const double n = p.n_total;
  const double q = n * n / 4.0;
  const double damp1 = std::exp(-2.0 * n * std::pow(std::sin(0.5 * p.chi_t), 2));
  const double damp2 = std::exp(-2.0 * n * std::pow(std::sin(p.chi_t), 2));
  CoherentMoments m;
  m.number = 0.5 * n;
  m.pair = q;
  m.exchange = q * damp2;
  m.hop = q * damp1 * std::polar(1.0, p.chi_t);
  m.hop_conj = std::conj(m.hop);
  m.cross = q;
  return m;
}

SpinMoments assemble_spin_moments(const CoherentMoments& m) {
  SpinMoments s;
  // a <-> b symmetry: <b^+ b^+ b b> = <a^+ a^+ a a>, <b^+ b^+ a a> = conj <a^+ a^+ b b>.
  s.jz2 = 0.25 * (2.0 * m.pair + 2.0 * m.number - 2.0 * m.cross);
  s.jy2 = 0.25 * (2.0 * m.cross + 2.0 * m.number - 2.0 * m.exchange.real());
  // (i/2)(<a^+ a a b^+> + <a^+ b^+ b b> - <a b^+ b^+ b> - <a^+ a^+ a b>) = 2 Im <a^+ a^+ a b>
  s.jzjy_sym = 2.0 * m.hop.imag();
  // For the twisted pair <a^+ a^+ a b> = (N_t/2) e^{i chi T} <a^+ b>, and <J_x> = <a^+ b>.
  s.jx_mean = m.number > 0.0 ? std::abs(m.hop) / m.number : 0.0;
  s.jy_mean = 0.0;
  s.jz_mean = 0.0;
  s.jy_var = s.jy2;
  s.jz_var = s.jz2;
  return s;
}

double RingModeAmplitudes::population_plus() const {
  double s = 0.0;
  for (const auto& [q, c] : plus) s += std::norm(c);
  return s;
}

double RingModeAmplitudes::population_minus() const {
  double s = 0.0;
  for (const auto& [q, c] : minus) s += std::norm(c);
  return s;
}

namespace {

// new_+[q] = u c_+[q] + v c_-[q - 2n],  new_-[q] = u c_-[q] + w c_+[q + 2n]
RingModeAmplitudes split(const RingModeAmplitudes& in, long n, Complex u, Complex v, Complex w) {
  RingModeAmplitudes out;
  for (const auto& [q, c] : in.plus) {
    out.plus[q] += u * c;
    out.minus[q - 2 * n] += w * c;
  }
  for (const auto& [q, c] : in.minus) {
    out.minus[q] += u * c;
    out.plus[q + 2 * n] += v * c;
  }
  return out;
}

}  // namespace

RingModeAmplitudes noninteracting_mode_evolution(const RingModeAmplitudes& amplitudes, long n, double omega,
                                                 double t, double radius) {
  const double r = 1.0 / std::sqrt(2.0);
  RingModeAmplitudes s = split(amplitudes, n, r, -r, r);
  for (auto* m : {&s.plus, &s.minus}) {
    for (auto& [q, c] : *m) c *= std::polar(1.0, -free_mode_phase(q, omega, t, radius));
  }
  return split(s, n, r, Complex(0.0, -r), Complex(0.0, -r));
}

}  // namespace ringgyro
