#pragma once

#include "ringgyro/grid.hpp"

namespace ringgyro {

/// Phase convention of a 50/50 Raman pulse.
///
///   first: psi_+- -> (psi_+- -+ psi_-+ e^{+-2ik0 xi}) / sqrt(2)
///   final: psi_+- -> (psi_+- - i psi_-+ e^{+-2ik0 xi}) / sqrt(2)
enum class SplitterConvention { first, final };

/// Pointwise unitary mixing of the two components with momentum transfer
/// +-2 k0. Throws TopologyError unless 2 k0 R is an integer.
TwoComponentField beamsplitter_5050(const TwoComponentField& field, double k0, SplitterConvention convention);

/// psi_+- -> psi_+- cos(theta) - i psi_-+ sin(theta) e^{+-2ik0 xi}.
/// theta = pi/4 is the `final` 50/50 splitter.
TwoComponentField beamsplitter_variable(const TwoComponentField& field, double k0, double theta);

/// In-place forms used inside trajectory loops.
void apply_beamsplitter_5050(TwoComponentField& field, double k0, SplitterConvention convention);
void apply_beamsplitter_variable(TwoComponentField& field, double k0, double theta);

}  // namespace ringgyro
