#pragma once

#include <stdexcept>
#include <string>

namespace critsphere {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. log_gamma(0)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid problem or discretization parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Quadrature refinement disagreed beyond the accepted tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Iteration produced non-finite values.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Newton refinement hit a singular or ill-conditioned Galerkin matrix.
class RefinementError : public Error {
 public:
  using Error::Error;
};

/// Operation requested for a parameter regime it does not support.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Internal failure, e.g. root finding that did not converge.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace critsphere
