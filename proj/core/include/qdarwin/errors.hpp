#pragma once

#include <stdexcept>
#include <string>

namespace qdarwin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range dimensions, layouts, or subsystem indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument outside an operation's precondition (range checks, bad flags).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A state, operator, or channel fails its type invariant.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Requested model exceeds the dense dimension budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Post-selection onto an outcome of (numerically) zero probability.
class PostselectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdarwin
