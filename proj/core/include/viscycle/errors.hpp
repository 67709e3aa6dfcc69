#pragma once

#include <stdexcept>
#include <string>

namespace viscycle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pure state whose Bloch vector is not unit length (or cannot be made so).
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Interferometer amplitudes that are unnormalized, zero, or mismatched.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of states, paths, or cycle length.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Path index out of range or a degenerate pair (i == j).
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a property of its input that does not hold,
/// e.g. balanced path amplitudes.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Least-squares fringe fit failed.
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace viscycle
