#pragma once

#include <stdexcept>
#include <string>

namespace bolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied data (non-finite samples, violated preconditions).
struct InvalidInputError : Error {
    using Error::Error;
};

/// The Galerkin cutoff is too small for the requested quantity
/// (eigenvalue spacing dropped below 1 by more than the tolerance).
struct TruncationError : Error {
    using Error::Error;
};

/// A state became non-finite or exceeded the blow-up guard.
struct DivergenceError : Error {
    using Error::Error;
};

/// The adaptive step size underflowed.
struct StiffnessError : Error {
    using Error::Error;
};

/// A quantity that is positive by theory came out nonpositive.
struct InternalConsistencyError : Error {
    using Error::Error;
};

} // namespace bolab
