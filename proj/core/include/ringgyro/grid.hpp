#pragma once

// Periodic 1D grids and the complex fields that live on them.
//
// Units throughout the library: hbar = m = 1, and R = 1 for the ring unless a
// different radius is requested. A field is stored as point samples psi(x_i);
// sum_i |psi(x_i)|^2 * spacing is the particle number it carries.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ringgyro/fft.hpp"

namespace ringgyro {

using Complex = std::complex<double>;

/// Uniform periodic lattice x_i = offset + i * spacing, i = 0 .. n-1.
///
/// Wavenumbers are stored in FFT order: k_j = 2 pi m_j / length with
/// m_j = 0, 1, ..., n/2 - 1, -n/2, ..., -1.
class Grid1D {
 public:
  Grid1D(std::size_t n_points, double length, double offset);

  /// Ring of radius R sampled on xi in [-pi R, pi R).
  static Grid1D ring(std::size_t n_points = 512, double radius = 1.0);
  /// Periodic box of the given length centered on `center`.
  static Grid1D line(std::size_t n_points, double length, double center = 0.0);

  std::size_t size() const noexcept { return data_->n; }
  double length() const noexcept { return data_->length; }
  double spacing() const noexcept { return data_->spacing; }
  double offset() const noexcept { return data_->offset; }
  /// Radius of the ring this box closes into, length / (2 pi).
  double radius() const noexcept;

  double x(std::size_t i) const noexcept { return data_->positions[i]; }
  std::span<const double> positions() const noexcept { return data_->positions; }
  std::span<const double> wavenumbers() const noexcept { return data_->wavenumbers; }

  /// Integer mode number m_j of FFT bin j.
  long mode_number(std::size_t j) const noexcept;
  /// FFT bin holding integer mode m (taken modulo n).
  std::size_t bin_of_mode(long m) const noexcept;

  const FftPlan& fft() const noexcept { return *data_->plan; }

  /// Grids compare equal when they describe the same lattice.
  bool operator==(const Grid1D& other) const noexcept;

 private:
  struct Data {
    std::size_t n;
    double length;
    double spacing;
    double offset;
    std::vector<double> positions;
    std::vector<double> wavenumbers;
    std::shared_ptr<const FftPlan> plan;
  };
  std::shared_ptr<const Data> data_;
};

/// Complex amplitudes sampled on a Grid1D.
class ComplexField {
 public:
  explicit ComplexField(Grid1D grid);
  ComplexField(Grid1D grid, std::vector<Complex> values);

  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex& operator[](std::size_t i) noexcept { return values_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return values_[i]; }

  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }

  ComplexField& operator*=(Complex factor) noexcept;
  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);

  friend ComplexField operator*(Complex factor, ComplexField f) { return f *= factor; }
  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }

 private:
  Grid1D grid_;
  std::vector<Complex> values_;
};

/// Internal states |+> and |-> on one shared grid.
struct TwoComponentField {
  TwoComponentField(ComplexField plus_component, ComplexField minus_component);

  const Grid1D& grid() const noexcept { return plus.grid(); }

  ComplexField plus;
  ComplexField minus;
};

/// Throws ContractViolation unless both fields sit on the same grid.
void require_same_grid(const ComplexField& a, const ComplexField& b, std::string_view context);

/// sum_i conj(a_i) b_i * spacing.
Complex overlap(const ComplexField& a, const ComplexField& b);

/// sum_i |f_i|^2 * spacing.
double norm_particles(const ComplexField& f);

/// Total of both components.
double norm_particles(const TwoComponentField& f);

std::vector<double> density(const ComplexField& f);

/// Rescale f so that norm_particles(f) == target. Throws on a zero field.
void normalize(ComplexField& f, double target = 1.0);

/// DFT coefficients in FFT order, scaled so that sum_j |c_j|^2 equals
/// norm_particles(f). c_j is the amplitude of exp(i k_j x) on the box.
std::vector<Complex> spectrum(const ComplexField& f);

/// |spectrum(f)|^2.
std::vector<double> spectral_density(const ComplexField& f);

/// Inverse of spectrum(): build a field from FFT-ordered mode amplitudes.
ComplexField from_spectrum(const Grid1D& grid, std::span<const Complex> coefficients);

}  // namespace ringgyro
