#pragma once

#include <stdexcept>
#include <string>

namespace vqb {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (observable, calibration, target, config).
struct ParseError : Error {
  using Error::Error;
};

/// A precondition of an operation was violated by the caller.
struct ContractError : Error {
  using Error::Error;
};

/// Missing or inconsistent configuration (durations, hyperparameters).
struct ConfigError : Error {
  using Error::Error;
};

/// Circuit cannot be mapped onto the requested hardware target.
struct RoutingError : Error {
  using Error::Error;
};

}  // namespace vqb
