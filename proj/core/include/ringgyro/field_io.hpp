#pragma once

#include <filesystem>
#include <iosfwd>

#include "ringgyro/grid.hpp"

namespace ringgyro {

// Field dump format (CSV, one file per component):
//
//   # ringgyro field dump v1
//   # n_points=512
//   # length=6.283185307179586
//   # offset=-3.141592653589793
//   # units=hbar=m=1;R=length/(2pi)
//   # wavenumber_order=fft (k_j = 2 pi m_j / length, m = 0..n/2-1,-n/2..-1)
//   x,re,im
//   -3.141592653589793,0.0012,-0.0004
//   ...
//
// Doubles are printed round-trip exact, so a dump reloads bit-identically.

void write_field_csv(std::ostream& out, const ComplexField& field);
void write_field_csv(const std::filesystem::path& path, const ComplexField& field);

/// Parse a dump produced by write_field_csv. Throws ConfigError on malformed input.
ComplexField read_field_csv(std::istream& in);
ComplexField read_field_csv(const std::filesystem::path& path);

}  // namespace ringgyro
