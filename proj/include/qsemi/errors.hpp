#pragma once

#include <stdexcept>
#include <string>

namespace qsemi {

/// Base class for all failures reported by the library. The CLI maps each
/// subclass to a stable process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Malformed or schema-invalid input (exit code 2).
class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// A mathematical hypothesis of the requested analysis does not hold:
/// non-elliptic symbol, Re q not non-positive, Re q identically zero, ...
/// (exit code 3).
class HypothesisError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// A numerical decision could not be made reliably at the configured
/// tolerances: indeterminate ellipticity, colliding eigenvalue clusters,
/// quadrature non-convergence (exit code 4).
class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace qsemi
