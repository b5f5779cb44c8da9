#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Exponent or prime-power arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed argument (non-prime modulus, q not a power of p, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input outside the class of rings/ideals an exact route supports.
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// A quotient expected to be zero-dimensional is not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A named precondition of an operation failed.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// A step of the path-ring counterexample did not reproduce.
class CounterexampleFailed : public Error {
 public:
  using Error::Error;
};

/// A configured resource limit was hit. Never carries a verdict.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what, std::size_t basis_size = 0,
                          std::size_t pending_pairs = 0, std::size_t reductions = 0)
      : Error(what),
        basis_size_(basis_size),
        pending_pairs_(pending_pairs),
        reductions_(reductions) {}

  std::size_t basis_size() const { return basis_size_; }
  std::size_t pending_pairs() const { return pending_pairs_; }
  std::size_t reductions() const { return reductions_; }

 private:
  std::size_t basis_size_;
  std::size_t pending_pairs_;
  std::size_t reductions_;
};

}  // namespace ccl
