#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gqe {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input detected before any numerics run (bad expression text,
/// invalid parameters, inconsistent dimensions).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Expression text that does not match the grammar. `position` is the
/// zero-based byte offset of the offending token.
class SyntaxError : public InvalidArgument {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : InvalidArgument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A well-formed expression that fails at runtime: division by zero, log of a
/// non-positive value, sqrt of a negative value, non-finite result.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& message, std::string subexpression, double argument)
      : Error(message + " in '" + subexpression + "' at argument " + std::to_string(argument)),
        subexpression_(std::move(subexpression)),
        argument_(argument) {}
  const std::string& subexpression() const noexcept { return subexpression_; }
  double argument() const noexcept { return argument_; }

 private:
  std::string subexpression_;
  double argument_;
};

/// Evaluation outside a declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The conformal factor vanished at an evaluation point.
class ZeroConformalFactor : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Inputs that the construction explicitly excludes (f' = 0, c1 = 0, a = 0).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Quadrature or root finding failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gqe
