#pragma once

#include <stdexcept>
#include <string>

namespace skew {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument outside the operation's domain (x <= 0, alpha outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed one of the type invariants (Hermiticity, unit trace, positivity, finiteness).
/// `invariant()` names the failed invariant so front ends can report it.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& what)
      : Error(what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// The state has an eigenvalue below its positivity floor where invertibility is required.
class SingularStateError : public Error {
 public:
  using Error::Error;
};

/// A function that is not regular (f(0) == 0) was passed where f(0) != 0 is required.
class NonRegularError : public Error {
 public:
  using Error::Error;
};

/// The Jacobi eigensolver hit its sweep limit.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Unknown registry identifier (inequality, fixture, function kind).
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

}  // namespace skew
