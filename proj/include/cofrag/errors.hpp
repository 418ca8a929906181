#pragma once

#include <stdexcept>
#include <string>

namespace cofrag {

// Invalid user-facing configuration (bad grid sizes, negative rates, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested target cannot be met (e.g. equilibrium volume out of range).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation not available for the given inputs (e.g. projection on a
// non-Cartesian mesh).
struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

// The explicit step produced a negative density in strict mode.
struct PositivityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cofrag
