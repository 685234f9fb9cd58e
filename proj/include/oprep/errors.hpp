#pragma once

#include <stdexcept>
#include <string>

namespace oprep {

// Operand dimensions do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller-supplied parameter is out of range or malformed.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The input is well-formed but outside the operation's mathematical domain
// (non-Hermitian input to eigh, mixed state given to a pure-state measure).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A state failed its invariants (normalization, Hermiticity, positivity).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold to round-off did not.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oprep
