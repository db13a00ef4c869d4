#pragma once

#include <stdexcept>
#include <string>

namespace specbasis {

// Argument outside [-1, 1] or another mathematical domain violation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition does not hold (e.g. v unbounded at an endpoint).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested size is below the minimum for the construction.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Operation does not apply to the basis of its input.
class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base class for failures of the numerics themselves.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedError : public NumericalError {
 public:
  IllConditionedError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// Fit window has too few usable points.
class WindowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace specbasis
