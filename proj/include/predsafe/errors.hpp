#pragma once

#include <stdexcept>
#include <string>

namespace predsafe {

/// Invalid parameters, scenario files or preconditions. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A NaN or Inf appeared in a state, derivative or intermediate value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A controller violated its own barrier inequality at an evaluation point.
/// Maps to CLI exit code 2.
class SafetyAssertionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace predsafe
