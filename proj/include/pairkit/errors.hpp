#pragma once

#include <stdexcept>
#include <string>

namespace pairkit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data, dangling references, violated preconditions.
class DataError : public Error {
 public:
  using Error::Error;
};

// Run-configuration problems; the CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pairkit
