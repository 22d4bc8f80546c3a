#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ringgyro {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments that break an API contract (mismatched grids, bad sizes).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A feature is too narrow or too wide for the grid it is placed on.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the input state does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf appeared while propagating a field.
class NumericalBlowUp : public Error {
 public:
  NumericalBlowUp(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A finite-difference derivative came out inconsistent (e.g. negative QFI).
class NumericalDerivativeError : public Error {
 public:
  using Error::Error;
};

/// A two-outcome probability sits at 0 or 1, where the CFI is singular.
class DegenerateOutcome : public Error {
 public:
  using Error::Error;
};

/// Momentum transfer 2*k0*R is not an integer, so e^{2ik0 xi} is not single valued.
class TopologyError : public Error {
 public:
  using Error::Error;
};

class InsufficientStatistics : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation leaves more probability mass than allowed.
class CutoffError : public Error {
 public:
  using Error::Error;
};

class TuningError : public Error {
 public:
  using Error::Error;
};

/// Angle requested where it is undefined (theta_chi at chiT = 0).
class UndefinedAngle : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ringgyro
