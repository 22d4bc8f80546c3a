#include "ringgyro/beamsplitter.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ringgyro/errors.hpp"

namespace ringgyro {

namespace {

void check_winding(const Grid1D& grid, double k0) {
  const double transfer = 2.0 * k0 * grid.radius();
  if (std::abs(transfer - std::round(transfer)) > 1e-9) {
    std::ostringstream msg;
    msg << "beamsplitter: 2 k0 R = " << transfer << " is not an integer";
    throw TopologyError(msg.str());
  }
}

// new_+ = a psi_+ + b psi_- e^{2ik0x};  new_- = a psi_- + c psi_+ e^{-2ik0x}
void mix(TwoComponentField& f, double k0, Complex a, Complex b, Complex c) {
  check_winding(f.grid(), k0);
  const Grid1D& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex w = std::polar(1.0, 2.0 * k0 * g.x(i));
    const Complex p = f.plus[i];
    const Complex m = f.minus[i];
    f.plus[i] = a * p + b * m * w;
    f.minus[i] = a * m + c * p * std::conj(w);
  }
}

}  // namespace

void apply_beamsplitter_5050(TwoComponentField& field, double k0, SplitterConvention convention) {
  const double r = 1.0 / std::sqrt(2.0);
  if (convention == SplitterConvention::first) {
    mix(field, k0, r, -r, r);
  } else {
    mix(field, k0, r, Complex(0.0, -r), Complex(0.0, -r));
  }
}

void apply_beamsplitter_variable(TwoComponentField& field, double k0, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  mix(field, k0, c, Complex(0.0, -s), Complex(0.0, -s));
}

TwoComponentField beamsplitter_5050(const TwoComponentField& field, double k0, SplitterConvention convention) {
  TwoComponentField out = field;
  apply_beamsplitter_5050(out, k0, convention);
  return out;
}

TwoComponentField beamsplitter_variable(const TwoComponentField& field, double k0, double theta) {
  TwoComponentField out = field;
  apply_beamsplitter_variable(out, k0, theta);
  return out;
}

}  // namespace ringgyro
