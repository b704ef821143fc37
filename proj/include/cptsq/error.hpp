#pragma once

#include <stdexcept>
#include <string>

namespace cptsq {

/// Bad user input: non-finite numbers, out-of-domain parameters, malformed grids.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy answer.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested working point is not a stable steady state.
class UnstableOperatingPoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The single-atom Liouvillian has more than one stationary state.
class DegenerateSteadyState : public SolverError {
public:
    using SolverError::SolverError;
};

namespace detail {
void require_finite(double value, const char* name);
}

}  // namespace cptsq
