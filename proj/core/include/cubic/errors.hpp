#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubic {

// Malformed arguments, shape mismatches, values outside a precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size guard (points, dimension, term budget) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation is not defined for this ring or characteristic.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::size_t rank)
      : std::runtime_error(what + " (rank " + std::to_string(rank) + ")"), rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

// Machine-integer coefficient or exponent overflow in exact arithmetic.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Raised when an internal invariant fails; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cubic
