#pragma once
// Two-mode Fock-basis states, used as a brute-force check of the closed forms.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ringgyro/two_mode.hpp"

namespace ringgyro {

/// Amplitudes c(n1, n2) for n1 + n2 <= max_total, stored by total number so
/// that number-conserving operators act block by block.
///
/// Amplitudes are kept in long double: the twist phases reach N^2 chi T and
/// moments such as <a^+ a^+ b b> come out of large cancellations.
class FockState2 {
 public:
  using Complex = std::complex<long double>;

  explicit FockState2(std::size_t max_total);

  /// e^{-|alpha|^2} sum alpha^{n1+n2} / sqrt(n1! n2!) e^{-i Phi} |n1, n2>,
  /// Phi = (chi T / 2) [n1 (n1 - 1) + n2 (n2 - 1)], truncated at max_total.
  static FockState2 twisted_coherent(const TwoModeParams& p, std::size_t max_total);

  std::size_t max_total() const noexcept { return blocks_.size() - 1; }
  Complex amplitude(std::size_t n1, std::size_t n2) const;
  Complex& amplitude(std::size_t n1, std::size_t n2);

  double norm() const;
  /// Probability in blocks with n1 + n2 >= from_total.
  double tail_mass(std::size_t from_total) const;
  Complex inner(const FockState2& other) const;  // <this|other>

  FockState2 annihilate_a() const;
  FockState2 annihilate_b() const;
  FockState2 apply_jx() const;
  FockState2 apply_jy() const;
  FockState2 apply_jz() const;

  /// exp(-i theta J_x), which maps J_z -> J_z cos(theta) + J_y sin(theta).
  FockState2 rotate_x(double theta) const;

  /// Multiplies c(n1, n2) by exp(-i (chi T / 2) [n1 (n1 - 1) + n2 (n2 - 1)]).
  FockState2 twist(double chi_t) const;

 private:
  std::vector<std::vector<Complex>> blocks_;  // blocks_[N][n1]
};

/// Default total-number cutoff: ceil(N_t + 12 sqrt(N_t)).
std::size_t default_fock_cutoff(double n_total);

struct FockMoments {
  CoherentMoments moments;
  SpinMoments spin;
  std::size_t cutoff = 0;
  double tail = 0.0;  // mass in the top five blocks
};

/// Normally ordered and pseudo-spin moments of a state.
FockMoments fock_moments(const FockState2& state);

/// Build the twisted coherent pair and evaluate every moment by ladder
/// operators. Throws CutoffError when cutoff < N_t + 10 sqrt(N_t) or the mass
/// in the top five blocks exceeds 1e-10.
FockMoments fock_oracle_moments(const TwoModeParams& p, std::optional<std::size_t> cutoff = std::nullopt);

/// Twisted coherent pair with its cutoff audited as in fock_oracle_moments.
FockState2 audited_twisted_state(const TwoModeParams& p, std::optional<std::size_t> cutoff = std::nullopt);

/// Spin moments only.
SpinMoments spin_moments(const FockState2& state);

}  // namespace ringgyro
