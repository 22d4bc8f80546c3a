#include "ringgyro/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "ringgyro/errors.hpp"

namespace ringgyro {

namespace {

// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

struct FftPlan::Impl {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FftPlan::FftPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw ContractViolation("FftPlan: length must be positive");
  std::vector<std::complex<double>> scratch(n);
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  impl_->forward = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                    FFTW_FORWARD, flags);
  impl_->backward = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                     FFTW_BACKWARD, flags);
  if (!impl_->forward || !impl_->backward) throw Error("FftPlan: FFTW planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  if (impl_->forward) fftw_destroy_plan(impl_->forward);
  if (impl_->backward) fftw_destroy_plan(impl_->backward);
}

void FftPlan::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw ContractViolation("FftPlan::forward: size mismatch");
  fftw_execute_dft(impl_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void FftPlan::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw ContractViolation("FftPlan::inverse: size mismatch");
  fftw_execute_dft(impl_->backward, as_fftw(data.data()), as_fftw(data.data()));
}

}  // namespace ringgyro
