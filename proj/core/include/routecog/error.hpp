#pragma once

#include <stdexcept>
#include <string>

namespace routecog {

/// Raised for anything traceable to user-supplied input: malformed documents,
/// invalid parameters, unreachable OD pairs. The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NetworkError : public InputError {
 public:
  using InputError::InputError;
};

class ODFormatError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class ChoiceError : public InputError {
 public:
  using InputError::InputError;
};

class RoutingError : public InputError {
 public:
  using InputError::InputError;
};

/// Brute-force route enumeration exceeded its partial-path budget.
class EnumerationLimitError : public RoutingError {
 public:
  using RoutingError::RoutingError;
};

}  // namespace routecog
