#pragma once

#include <stdexcept>
#include <string>

namespace lefkit {

// Malformed or out-of-contract input. CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A configured cap (ball radius, enumeration size, oracle guard) was hit.
// CLI maps this to exit code 3.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when enumeration is requested from an infinite backend.
class NotEnumerable : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

} // namespace lefkit
