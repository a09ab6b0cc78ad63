#pragma once

#include <stdexcept>
#include <string>

namespace cslbound {

/// Invalid physical input (non-positive size, density, rate, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed user data: config files, CSV rows, unit strings.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RootNotFoundError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateFitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientDataError : public DataError {
 public:
  using DataError::DataError;
};

/// Quantity without a unit, or with a unit of the wrong dimension.
class UnitError : public DataError {
 public:
  using DataError::DataError;
};

/// Malformed or unknown configuration entries.
class ConfigError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace cslbound
