#pragma once

#include <stdexcept>
#include <string>

namespace loreg {

// Error categories map to CLI exit codes: validation -> 1, numeric -> 2, io -> 3.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotNormalized : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidPValue : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndivisibleGroups : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InsufficientReplications : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndexNotInActiveSet : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateColumn : public ValidationError {
 public:
  DegenerateColumn(int column, const std::string& what)
      : ValidationError(what), column(column) {}
  int column;
};

class NotPositiveDefinite : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularActiveGram : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonPositiveVariance : public NumericError {
 public:
  using NumericError::NumericError;
};

class AllCandidatesFailed : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace loreg
