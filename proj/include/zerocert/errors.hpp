#pragma once

#include <stdexcept>
#include <string>

namespace zerocert {

// Vector length does not match the problem dimension.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configuration value is missing, malformed, or out of range. `key()` names
// the offending entry using dotted notation (e.g. "ball.radius").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// A transform parameter violates group membership (e.g. mu == 0).
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A certification method was requested for a problem it cannot handle.
class InvalidMethodError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A relaxation ratio was evaluated at a point where its denominator vanishes.
class SingularRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace zerocert
