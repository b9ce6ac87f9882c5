#pragma once

#include <stdexcept>
#include <string>

namespace duality {

// A domain invariant or operation precondition was violated.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configuration file or command invocation is malformed.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical procedure broke down (singular fit, unphysical estimate).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace duality
