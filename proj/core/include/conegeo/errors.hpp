#pragma once

#include <stdexcept>
#include <string>

namespace conegeo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Columns of the chart differential are rank deficient at the point.
struct ChartDegeneracyError : Error {
    using Error::Error;
};

/// Parameter or geometric point outside the admissible domain
/// (out-of-chart parameter, point not on the lateral cone boundary, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Normal offset beyond the focal distance (area weight not positive).
struct FocalDistanceError : Error {
    using Error::Error;
};

/// Invalid experiment configuration (schema violation, unknown key, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Iterative solver failed to converge.
struct SolverError : Error {
    using Error::Error;
};

}  // namespace conegeo
