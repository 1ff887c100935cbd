#pragma once

#include <stdexcept>
#include <string>

namespace triqed {

// Invalid physics preconditions (resonance violated, bad quantum numbers, ...).
// `residual` carries the magnitude of the violated condition when meaningful.
class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& msg, double residual = 0.0)
      : std::runtime_error(msg), residual(residual) {}
  double residual;
};

// Malformed configuration input (unknown keys, bad JSON, missing fields).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace triqed
