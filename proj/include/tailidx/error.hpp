#pragma once

#include <stdexcept>
#include <string>

namespace tailidx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k too large (or too small) for the sample at hand.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Coinciding values among the top k+1 order statistics.
class TieError : public Error {
 public:
  using Error::Error;
};

/// A logarithm of a non-positive value was required.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to self-converge (or hit a non-finite value).
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario/config document. `field()` is the dotted path of the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : "field '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tailidx
