#pragma once

#include <stdexcept>
#include <string>

namespace jclab {

/// Base class for all library-specific failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |alpha| is too small for |alpha> and |-alpha> to span a qubit.
class DegenerateBasis : public Error {
 public:
  using Error::Error;
};

/// The Fock cutoff cannot hold the state to the requested accuracy.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator could not reach the requested local error.
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// Too much probability weight outside the span of {|alpha>, |-alpha>}.
class ExcessLeakage : public Error {
 public:
  using Error::Error;
};

/// A density matrix violates Hermiticity / trace / positivity tolerances.
class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

/// No CHSH violation anywhere in the search bracket.
class NoViolation : public Error {
 public:
  using Error::Error;
};

/// Bad scenario configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace jclab
