#pragma once

#include <stdexcept>
#include <string>

namespace scalerel {

// Base of every error raised by the library. `where()` names the module and
// operation that failed, e.g. "velocity-extraction/bq_velocity".
class Error : public std::runtime_error {
 public:
  Error(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Numerical failures. The CLI maps all of these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Complex norm of a biquaternion too small to invert.
class ZeroDivisor : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Point on (or within the core radius of) the z axis where the azimuth is
// undefined.
class AxisSingularity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SmallComponentsNotSmall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotNormalized : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientData : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GeometryInvalid : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Bad user input: unknown key, unparsable value, out-of-range parameter.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("cli/parse_config", "'" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace scalerel
