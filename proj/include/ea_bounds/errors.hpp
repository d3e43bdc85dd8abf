#pragma once

#include <stdexcept>
#include <string>

namespace ea {

/// Invalid input: bad dimension, malformed distribution table, size mismatch.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation was refused because it exceeds a documented size guard.
class GuardError : public std::length_error {
 public:
  explicit GuardError(const std::string& what) : std::length_error(what) {}
};

/// A numerical routine failed to deliver a result within tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ea
