#include "ringgyro/fock.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ringgyro/errors.hpp"

namespace ringgyro {

using Complex = FockState2::Complex;
using Real = long double;

FockState2::FockState2(std::size_t max_total) : blocks_(max_total + 1) {
  for (std::size_t n = 0; n <= max_total; ++n) blocks_[n].assign(n + 1, Complex{});
}

FockState2 FockState2::twisted_coherent(const TwoModeParams& p, std::size_t max_total) {
  p.validate();
  FockState2 s(max_total);
  const Real a2 = 0.5L * static_cast<Real>(p.n_total);
  const Real log_a = 0.5L * std::log(a2);
  for (std::size_t n = 0; n <= max_total; ++n) {
    for (std::size_t n1 = 0; n1 <= n; ++n1) {
      const std::size_t n2 = n - n1;
      const Real d1 = static_cast<Real>(n1);
      const Real d2 = static_cast<Real>(n2);
      const Real log_mag =
          -a2 + static_cast<Real>(n) * log_a - 0.5L * (std::lgamma(d1 + 1.0L) + std::lgamma(d2 + 1.0L));
      const Real phi = 0.5L * static_cast<Real>(p.chi_t) * (d1 * (d1 - 1.0L) + d2 * (d2 - 1.0L));
      s.blocks_[n][n1] = std::polar(std::exp(log_mag), -phi);
    }
  }
  return s;
}

Complex FockState2::amplitude(std::size_t n1, std::size_t n2) const {
  const std::size_t n = n1 + n2;
  return n < blocks_.size() ? blocks_[n][n1] : Complex{};
}

Complex& FockState2::amplitude(std::size_t n1, std::size_t n2) {
  const std::size_t n = n1 + n2;
  if (n >= blocks_.size()) throw ContractViolation("FockState2: index beyond cutoff");
  return blocks_[n][n1];
}

double FockState2::norm() const { return tail_mass(0); }

double FockState2::tail_mass(std::size_t from_total) const {
  Real s = 0.0L;
  for (std::size_t n = from_total; n < blocks_.size(); ++n) {
    for (const auto& c : blocks_[n]) s += std::norm(c);
  }
  return static_cast<double>(s);
}

Complex FockState2::inner(const FockState2& other) const {
  Complex s{};
  const std::size_t top = std::min(blocks_.size(), other.blocks_.size());
  for (std::size_t n = 0; n < top; ++n) {
    for (std::size_t i = 0; i <= n; ++i) s += std::conj(blocks_[n][i]) * other.blocks_[n][i];
  }
  return s;
}

FockState2 FockState2::annihilate_a() const {
  FockState2 out(max_total());
  for (std::size_t n = 1; n < blocks_.size(); ++n) {
    for (std::size_t n1 = 1; n1 <= n; ++n1) {
      out.blocks_[n - 1][n1 - 1] = std::sqrt(static_cast<Real>(n1)) * blocks_[n][n1];
    }
  }
  return out;
}

FockState2 FockState2::annihilate_b() const {
  FockState2 out(max_total());
  for (std::size_t n = 1; n < blocks_.size(); ++n) {
    for (std::size_t n1 = 0; n1 < n; ++n1) {
      out.blocks_[n - 1][n1] = std::sqrt(static_cast<Real>(n - n1)) * blocks_[n][n1];
    }
  }
  return out;
}

namespace {

// <n1+1, n2-1| a^+ b |n1, n2> = sqrt((n1 + 1) n2)
Real hop(std::size_t n, std::size_t n1) {
  return std::sqrt(static_cast<Real>(n1 + 1) * static_cast<Real>(n - n1));
}

}  // namespace

FockState2 FockState2::apply_jx() const {
  FockState2 out(max_total());
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    const auto& in = blocks_[n];
    auto& o = out.blocks_[n];
    for (std::size_t n1 = 0; n1 < n; ++n1) {
      const Real h = 0.5L * hop(n, n1);
      o[n1 + 1] += h * in[n1];
      o[n1] += h * in[n1 + 1];
    }
  }
  return out;
}

FockState2 FockState2::apply_jy() const {
  FockState2 out(max_total());
  const Complex mi(0.0L, -0.5L);  // 1 / (2i)
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    const auto& in = blocks_[n];
    auto& o = out.blocks_[n];
    for (std::size_t n1 = 0; n1 < n; ++n1) {
      const Real h = hop(n, n1);
      o[n1 + 1] += mi * h * in[n1];   // a^+ b
      o[n1] -= mi * h * in[n1 + 1];   // b^+ a
    }
  }
  return out;
}

FockState2 FockState2::apply_jz() const {
  FockState2 out(max_total());
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    for (std::size_t n1 = 0; n1 <= n; ++n1) {
      const Real jz = 0.5L * (static_cast<Real>(n1) - static_cast<Real>(n - n1));
      out.blocks_[n][n1] = jz * blocks_[n][n1];
    }
  }
  return out;
}

FockState2 FockState2::rotate_x(double theta) const {
  FockState2 out(max_total());
  out.blocks_[0] = blocks_[0];
  for (std::size_t n = 1; n < blocks_.size(); ++n) {
    const Eigen::Index m = static_cast<Eigen::Index>(n + 1);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd sub(m - 1);
    for (std::size_t n1 = 0; n1 < n; ++n1) sub[static_cast<Eigen::Index>(n1)] = static_cast<double>(0.5L * hop(n, n1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& v = es.eigenvectors();
    Eigen::VectorXcd c(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex z = blocks_[n][static_cast<std::size_t>(i)];
      c[i] = std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    Eigen::VectorXcd w = v.transpose() * c;
    for (Eigen::Index i = 0; i < m; ++i) w[i] *= std::polar(1.0, -theta * es.eigenvalues()[i]);
    const Eigen::VectorXcd r = v * w;
    for (Eigen::Index i = 0; i < m; ++i) out.blocks_[n][static_cast<std::size_t>(i)] = Complex(r[i].real(), r[i].imag());
  }
  return out;
}

FockState2 FockState2::twist(double chi_t) const {
  FockState2 out = *this;
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    for (std::size_t n1 = 0; n1 <= n; ++n1) {
      const Real d1 = static_cast<Real>(n1);
      const Real d2 = static_cast<Real>(n - n1);
      out.blocks_[n][n1] *= std::polar(1.0L, -0.5L * static_cast<Real>(chi_t) * (d1 * (d1 - 1.0L) + d2 * (d2 - 1.0L)));
    }
  }
  return out;
}

namespace {

std::complex<double> narrow(Complex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

std::size_t default_fock_cutoff(double n_total) {
  return static_cast<std::size_t>(std::ceil(n_total + 12.0 * std::sqrt(n_total)));
}

SpinMoments spin_moments(const FockState2& state) {
  const FockState2 jx = state.apply_jx();
  const FockState2 jy = state.apply_jy();
  const FockState2 jz = state.apply_jz();
  SpinMoments s;
  s.jz2 = jz.norm();
  s.jy2 = jy.norm();
  s.jzjy_sym = 2.0 * static_cast<double>(jz.inner(jy).real());
  s.jx_mean = static_cast<double>(state.inner(jx).real());
  s.jy_mean = static_cast<double>(state.inner(jy).real());
  s.jz_mean = static_cast<double>(state.inner(jz).real());
  s.jy_var = s.jy2 - s.jy_mean * s.jy_mean;
  s.jz_var = s.jz2 - s.jz_mean * s.jz_mean;
  return s;
}

FockMoments fock_moments(const FockState2& state) {
  const FockState2 a = state.annihilate_a();
  const FockState2 b = state.annihilate_b();
  const FockState2 aa = a.annihilate_a();
  const FockState2 bb = b.annihilate_b();
  const FockState2 ab = a.annihilate_b();
  FockMoments f;
  f.moments.number = a.norm();
  f.moments.pair = aa.norm();
  f.moments.exchange = narrow(aa.inner(bb));
  f.moments.hop = narrow(aa.inner(ab));
  f.moments.hop_conj = narrow(ab.inner(aa));
  f.moments.cross = ab.norm();
  f.spin = spin_moments(state);
  f.cutoff = state.max_total();
  f.tail = state.tail_mass(state.max_total() >= 4 ? state.max_total() - 4 : 0);
  return f;
}

FockState2 audited_twisted_state(const TwoModeParams& p, std::optional<std::size_t> cutoff) {
  p.validate();
  const std::size_t c = cutoff.value_or(default_fock_cutoff(p.n_total));
  if (static_cast<double>(c) < p.n_total + 10.0 * std::sqrt(p.n_total)) {
    std::ostringstream msg;
    msg << "fock cutoff " << c << " is below N_t + 10 sqrt(N_t) = " << p.n_total + 10.0 * std::sqrt(p.n_total);
    throw CutoffError(msg.str());
  }
  FockState2 s = FockState2::twisted_coherent(p, c);
  const double tail = s.tail_mass(c >= 4 ? c - 4 : 0);
  if (tail > 1e-10) {
    std::ostringstream msg;
    msg << "fock cutoff " << c << " leaves tail mass " << tail;
    throw CutoffError(msg.str());
  }
  return s;
}

FockMoments fock_oracle_moments(const TwoModeParams& p, std::optional<std::size_t> cutoff) {
  return fock_moments(audited_twisted_state(p, cutoff));
}

}  // namespace ringgyro
