#pragma once

#include <stdexcept>
#include <string>

namespace uc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data or parameters (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during a computation (CLI exit code 2).
class NumericError : public Error {
 public:
  using Error::Error;
};

class NegativeMass : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotNormalized : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MeanOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParamMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidParameter : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UsageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LeakExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

class PositivityLost : public NumericError {
 public:
  using NumericError::NumericError;
};

class TruncationTooSmall : public NumericError {
 public:
  using NumericError::NumericError;
};

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DivergentInversion : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace uc
