#pragma once

#include <stdexcept>
#include <string>

namespace ptmat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied inconsistent shapes, counts or malformed data.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative or direct numerical method failed to produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The matrix is defective or numerically indistinguishable from a defective one.
class ExceptionalPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An operation that requires unbroken PT symmetry was given a broken system.
class BrokenPhaseError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A linear system could not be solved within the conditioning budget.
class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The non-unitarity demonstration could not separate W from a commuting operator.
class InconclusiveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ptmat
