#pragma once

#include <stdexcept>
#include <string>

namespace sympert {

/// Precondition or shape violation on an input (bad dimension, unsorted
/// spectrum, index out of range, non-symplectic argument, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input matrix was required to be symmetric positive definite and is not.
class NotPositiveDefinite : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative kernel did not converge, or a guard on conditioning tripped.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gram-Schmidt column vanished after projection.
class DegenerateInput : public NumericError {
 public:
  using NumericError::NumericError;
};

/// An elementary SR pivot u^T J v was (numerically) zero.
class IsotropicRange : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Too few usable data points survived filtering.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sympert
