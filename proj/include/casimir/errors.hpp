#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument value or violated type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Configuration in which the two surfaces would touch or intersect.
class GeometryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A quadrature or iterative scheme failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Fitting problems: underdetermined systems, inconsistent data, targets
// outside the attainable range.
class FitError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class ParseError : public IoError {
 public:
  using IoError::IoError;
};

// Process exit codes used by the command-line tool. Verification failures
// (checks that ran but did not pass) exit with 1.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitIo = 4,
  kExitFit = 5,
};

// Maps a caught exception onto the exit code table above.
int exit_code_for(const std::exception& e);

}  // namespace casimir
