#pragma once

#include <stdexcept>
#include <string>

namespace bootlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cell, rectangle or index lies outside the lattice.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation that needs a nonempty input received an empty one.
class EmptyInputError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical routine could not reach the requested tolerance. Carries the
// best value found so far.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_value, double partial_error)
      : Error(what), partial_value_(partial_value), partial_error_(partial_error) {}

  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

// A deterministic lemma checked at runtime produced a counterexample. Never
// expected to fire; a hit means the implementation is wrong.
class LemmaViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace bootlab
