#pragma once

#include <stdexcept>
#include <string>

namespace lgp {

// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad CSV rows, dimension mismatches,
// incompatible states. Maps to exit code 2 in the CLI.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

// A measurement whose support set is empty: it lies outside the grid's
// coverage and would be silently lost if accepted.
class OutOfGridError : public DataError {
 public:
  using DataError::DataError;
};

// A prediction point with an empty local subset S*. Distinct from
// far-from-data queries, which still have basis functions nearby and
// resolve to the prior.
class NoLocalBasisError : public DataError {
 public:
  using DataError::DataError;
};

class IncompatibleStateError : public DataError {
 public:
  using DataError::DataError;
};

class MetricError : public DataError {
 public:
  using DataError::DataError;
};

// Factorization failures and other numerical breakdowns. Exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Invalid configuration values. Exit code 4.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Grid sizing problems: zero centers, or more centers than the configured cap.
class GridSizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace lgp
