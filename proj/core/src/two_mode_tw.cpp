#include "ringgyro/two_mode_tw.hpp"

#include <cmath>
#include <numbers>

#include "ringgyro/errors.hpp"
#include "ringgyro/parallel.hpp"
#include "ringgyro/random.hpp"

namespace ringgyro {

using Complex = std::complex<double>;

SpinMoments SpinMomentsEstimate::values() const {
  SpinMoments m;
  m.jz2 = jz2.value;
  m.jy2 = jy2.value;
  m.jzjy_sym = jzjy_sym.value;
  m.jx_mean = jx_mean.value;
  m.jy_mean = jy_mean.value;
  m.jz_mean = jz_mean.value;
  m.jy_var = jy_var.value;
  m.jz_var = jz_var.value;
  return m;
}

void apply_stage(const TwoModeStage& stage, Complex& a, Complex& b) {
  switch (stage.kind) {
    case TwoModeStage::Kind::twist:
      a *= std::polar(1.0, -stage.value * (std::norm(a) - 1.0));
      b *= std::polar(1.0, -stage.value * (std::norm(b) - 1.0));
      break;
    case TwoModeStage::Kind::rotate: {
      const double c = std::cos(0.5 * stage.value);
      const Complex s(0.0, -std::sin(0.5 * stage.value));
      const Complex a0 = a;
      a = c * a0 + s * b;
      b = c * b + s * a0;
      break;
    }
    case TwoModeStage::Kind::phase:
      a *= std::polar(1.0, 0.5 * stage.value);
      b *= std::polar(1.0, -0.5 * stage.value);
      break;
  }
}

namespace {

SpinPoint spin_of(Complex a, Complex b) {
  const Complex ab = std::conj(a) * b;
  return {ab.real(), ab.imag(), 0.5 * (std::norm(a) - std::norm(b))};
}

std::pair<Complex, Complex> sample_pair(double alpha, GaussianStream& rng) {
  const auto [x1, y1] = rng.normal_pair();
  const auto [x2, y2] = rng.normal_pair();
  return {Complex(alpha + 0.5 * x1, 0.5 * y1), Complex(alpha + 0.5 * x2, 0.5 * y2)};
}

MomentEstimate mean_of(const std::vector<double>& v) {
  const auto s = summarize(v);
  return {s.mean, s.mean_stderr};
}

}  // namespace

SpinMomentsEstimate estimate_spin_moments(std::span<const SpinPoint> cloud) {
  if (cloud.size() < 2) throw InsufficientStatistics("estimate_spin_moments: need at least two trajectories");
  constexpr double shift = 0.125;
  std::vector<double> jx, jy, jz, jy2, jz2, sym;
  for (const auto& p : cloud) {
    jx.push_back(p.jx);
    jy.push_back(p.jy);
    jz.push_back(p.jz);
    jy2.push_back(p.jy * p.jy);
    jz2.push_back(p.jz * p.jz);
    sym.push_back(2.0 * p.jz * p.jy);
  }
  SpinMomentsEstimate e;
  e.jx_mean = mean_of(jx);
  e.jy_mean = mean_of(jy);
  e.jz_mean = mean_of(jz);
  e.jy2 = mean_of(jy2);
  e.jz2 = mean_of(jz2);
  e.jy2.value -= shift;
  e.jz2.value -= shift;
  e.jzjy_sym = mean_of(sym);
  const auto vy = summarize(jy);
  const auto vz = summarize(jz);
  e.jy_var = {vy.variance - shift, vy.variance_stderr};
  e.jz_var = {vz.variance - shift, vz.variance_stderr};
  return e;
}

TwoModeTwResult two_mode_tw(const TwoModeParams& p, std::span<const TwoModeStage> sequence, std::size_t n_traj,
                            std::uint64_t seed, unsigned threads) {
  p.validate();
  if (n_traj < 2) throw InsufficientStatistics("two_mode_tw: need at least two trajectories");
  TwoModeTwResult r;
  r.clouds.assign(sequence.size() + 1, std::vector<SpinPoint>(n_traj));
  const double alpha = p.alpha();
  parallel_for(n_traj, threads, [&](std::size_t i) {
    GaussianStream rng(derive_seed(seed, i));
    auto [a, b] = sample_pair(alpha, rng);
    r.clouds[0][i] = spin_of(a, b);
    for (std::size_t s = 0; s < sequence.size(); ++s) {
      apply_stage(sequence[s], a, b);
      r.clouds[s + 1][i] = spin_of(a, b);
    }
  });
  for (const auto& c : r.clouds) r.moments.push_back(estimate_spin_moments(c));
  return r;
}

SensitivityEstimate two_mode_tw_sensitivity(const TwoModeParams& p, std::optional<double> theta,
                                            std::size_t n_traj, std::uint64_t seed, double phi_step,
                                            double radius, unsigned threads) {
  p.validate();
  if (n_traj < 2) throw InsufficientStatistics("two_mode_tw_sensitivity: need at least two trajectories");
  if (!(phi_step > 0.0)) throw ContractViolation("two_mode_tw_sensitivity: phi_step must be positive");
  const double alpha = p.alpha();
  const double phis[3] = {-phi_step, 0.0, phi_step};
  std::vector<double> nd[3];
  for (auto& v : nd) v.assign(n_traj, 0.0);
  parallel_for(n_traj, threads, [&](std::size_t i) {
    GaussianStream rng(derive_seed(seed, i));
    const auto [a0, b0] = sample_pair(alpha, rng);
    for (std::size_t j = 0; j < 3; ++j) {
      Complex a = a0, b = b0;
      apply_stage(TwoModeStage::phase(phis[j]), a, b);
      apply_stage(TwoModeStage::twist(p.chi_t), a, b);
      if (theta) {
        apply_stage(TwoModeStage::rotate(*theta), a, b);
        apply_stage(TwoModeStage::phase(phis[j]), a, b);
        apply_stage(TwoModeStage::twist(p.chi_t), a, b);
      }
      apply_stage(TwoModeStage::rotate(0.5 * std::numbers::pi), a, b);
      nd[j][i] = std::norm(a) - std::norm(b);
    }
  });
  OmegaScan scan;
  scan.minus = std::move(nd[0]);
  scan.zero = std::move(nd[1]);
  scan.plus = std::move(nd[2]);
  scan.d_omega = phi_step / (4.0 * std::numbers::pi * radius * radius);
  scan.ordering_correction = 0.5;
  return sensitivity(scan);
}

}  // namespace ringgyro
