#pragma once

#include <stdexcept>

namespace vforge {

// Thrown when a factored value with a negative exponent is materialized.
class NotAnIntegerError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown on checkpoint read/write/validation failure.
class CheckpointIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vforge
