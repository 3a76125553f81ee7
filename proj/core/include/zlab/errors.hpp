#pragma once

#include <stdexcept>
#include <string>

namespace zlab {

/// Invalid configuration or input sizing. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid/parameter sizing violation.
struct SizingError : ConfigError {
  using ConfigError::ConfigError;
};

/// Runtime numerical failure (blow-up, no contraction, ...). Exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A verified bound or invariant failed. Exit code 4.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zlab
