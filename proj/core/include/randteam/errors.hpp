#pragma once

#include <stdexcept>
#include <string>

namespace randteam {

/// Numerical failure (singular system, failed certificate, LP breakdown).
/// Never returned as a silently-wrong value.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed experiment configuration or CLI input.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace randteam
