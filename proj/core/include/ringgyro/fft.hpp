#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace ringgyro {

/// In-place complex 1D DFT of fixed length, backed by FFTW.
///
/// forward computes F_j = sum_i f_i exp(-2 pi i ij/n); inverse computes the
/// unnormalized backward transform, so inverse(forward(f)) == n f.
/// A single plan may be executed concurrently from several threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ringgyro
