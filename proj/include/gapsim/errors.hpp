#pragma once

#include <stdexcept>
#include <string>

namespace gapsim {

/// Mismatched operator/vector dimensions.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured size limit (qubit count, dense dimension).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A logical operator with no 2-local physical realization in the code.
struct UnsupportedOperatorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Gadget synthesis failed: degenerate parameters or unsolvable coefficients.
struct GadgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid model geometry (odd chain, no even lattice dimension, ...).
struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative numerical routine failed to converge.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gapsim
