#include "ringgyro/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ringgyro/errors.hpp"

namespace ringgyro {

Grid1D::Grid1D(std::size_t n_points, double length, double offset) {
  if (n_points < 2) throw ContractViolation("Grid1D: need at least two points");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ContractViolation("Grid1D: length must be positive and finite");
  }
  auto d = std::make_shared<Data>();
  d->n = n_points;
  d->length = length;
  d->spacing = length / static_cast<double>(n_points);
  d->offset = offset;
  d->positions.resize(n_points);
  d->wavenumbers.resize(n_points);
  const double dk = 2.0 * std::numbers::pi / length;
  const long half = static_cast<long>(n_points / 2);
  for (std::size_t j = 0; j < n_points; ++j) {
    d->positions[j] = offset + static_cast<double>(j) * d->spacing;
    long m = static_cast<long>(j);
    if (m >= static_cast<long>(n_points) - half) m -= static_cast<long>(n_points);
    d->wavenumbers[j] = dk * static_cast<double>(m);
  }
  d->plan = std::make_shared<const FftPlan>(n_points);
  data_ = std::move(d);
}

Grid1D Grid1D::ring(std::size_t n_points, double radius) {
  if (!(radius > 0.0)) throw ContractViolation("Grid1D::ring: radius must be positive");
  return Grid1D(n_points, 2.0 * std::numbers::pi * radius, -std::numbers::pi * radius);
}

Grid1D Grid1D::line(std::size_t n_points, double length, double center) {
  return Grid1D(n_points, length, center - 0.5 * length);
}

double Grid1D::radius() const noexcept { return data_->length / (2.0 * std::numbers::pi); }

long Grid1D::mode_number(std::size_t j) const noexcept {
  const long n = static_cast<long>(data_->n);
  long m = static_cast<long>(j);
  if (m >= n - n / 2) m -= n;
  return m;
}

std::size_t Grid1D::bin_of_mode(long m) const noexcept {
  const long n = static_cast<long>(data_->n);
  long r = m % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

bool Grid1D::operator==(const Grid1D& other) const noexcept {
  if (data_ == other.data_) return true;
  return data_->n == other.data_->n && data_->length == other.data_->length &&
         data_->offset == other.data_->offset;
}

ComplexField::ComplexField(Grid1D grid) : grid_(std::move(grid)), values_(grid_.size()) {}

ComplexField::ComplexField(Grid1D grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ContractViolation("ComplexField: " + std::to_string(values_.size()) +
                            " amplitudes for a grid of " + std::to_string(grid_.size()));
  }
}

ComplexField& ComplexField::operator*=(Complex factor) noexcept {
  for (auto& v : values_) v *= factor;
  return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  require_same_grid(*this, other, "ComplexField::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  require_same_grid(*this, other, "ComplexField::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

TwoComponentField::TwoComponentField(ComplexField plus_component, ComplexField minus_component)
    : plus(std::move(plus_component)), minus(std::move(minus_component)) {
  require_same_grid(plus, minus, "TwoComponentField");
}

void require_same_grid(const ComplexField& a, const ComplexField& b, std::string_view context) {
  if (!(a.grid() == b.grid())) {
    throw ContractViolation(std::string(context) + ": fields live on different grids");
  }
}

Complex overlap(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a, b, "overlap");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * a.grid().spacing();
}

double norm_particles(const ComplexField& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::norm(v);
  return sum * f.grid().spacing();
}

double norm_particles(const TwoComponentField& f) {
  return norm_particles(f.plus) + norm_particles(f.minus);
}

std::vector<double> density(const ComplexField& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::norm(f[i]);
  return out;
}

void normalize(ComplexField& f, double target) {
  const double n = norm_particles(f);
  if (!(n > 0.0)) throw PreconditionError("normalize: field has zero norm");
  f *= std::sqrt(target / n);
}

std::vector<Complex> spectrum(const ComplexField& f) {
  const Grid1D& g = f.grid();
  std::vector<Complex> c(f.values().begin(), f.values().end());
  g.fft().forward(c);
  const double scale = g.spacing() / std::sqrt(g.length());
  const auto k = g.wavenumbers();
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] *= scale * std::polar(1.0, -k[j] * g.offset());
  }
  return c;
}

std::vector<double> spectral_density(const ComplexField& f) {
  auto c = spectrum(f);
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = std::norm(c[j]);
  return out;
}

ComplexField from_spectrum(const Grid1D& grid, std::span<const Complex> coefficients) {
  if (coefficients.size() != grid.size()) {
    throw ContractViolation("from_spectrum: coefficient count does not match grid");
  }
  std::vector<Complex> v(coefficients.begin(), coefficients.end());
  const auto k = grid.wavenumbers();
  const double scale = 1.0 / std::sqrt(grid.length());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= scale * std::polar(1.0, k[j] * grid.offset());
  grid.fft().inverse(v);
  return ComplexField(grid, std::move(v));
}

}  // namespace ringgyro
