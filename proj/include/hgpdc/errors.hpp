#pragma once

#include <stdexcept>
#include <string>

namespace hgpdc {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration. Maps to CLI exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Any failure of the numerical core. Maps to CLI exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

class DegenerateDispersion : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class InvalidSpan : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class DimensionMismatch : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NonFiniteState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ConstraintViolation : public NumericalError {
public:
  ConstraintViolation(const std::string& what, double worst)
      : NumericalError(what), worst_residual(worst) {}
  double worst_residual;
};

/// Purity and modal weights are undefined when every squeezing parameter vanishes.
class EmptySpectrum : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// The perturbative oracle is only meaningful at low gain.
class RegimeError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace hgpdc
