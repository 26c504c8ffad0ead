#pragma once

#include <stdexcept>

namespace cqc {

/// Out-of-range physical or solver parameter.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A caller broke a documented precondition (e.g. non-unitary propagator).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Inputs that cannot be combined, such as trajectories on different grids.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace cqc
