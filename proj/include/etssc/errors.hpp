#pragma once

#include <stdexcept>
#include <string>

namespace etssc {

/// Bad input: configuration values, preconditions, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The numerics went somewhere they cannot come back from (non-finite state,
/// singular solve, non-Hurwitz closed loop where one is required).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace etssc
