#ifndef FRACGROUND_ERRORS_HPP
#define FRACGROUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracground {

/** Base class for all library errors. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Invalid argument or configuration value. */
struct ParameterError : Error {
    using Error::Error;
};

/** Operation refused because the problem size exceeds a hard guard. */
struct CapacityError : Error {
    using Error::Error;
};

/** A computation degenerated (division by ~0, non-finite intermediate). */
struct NumericError : Error {
    using Error::Error;
};

/** The torus is too small for the requested construction. */
struct DomainTooSmallError : ParameterError {
    using ParameterError::ParameterError;
};

/** Requested scale cannot be resolved on the grid. */
struct ResolutionError : ParameterError {
    using ParameterError::ParameterError;
};

/** Constraint V(u) = 1 cannot be reached from the given state. */
struct InfeasibleError : Error {
    using Error::Error;
};

/** Mountain-pass lower-bound function has no positive maximum. */
struct GeometryError : Error {
    using Error::Error;
};

/** No sign change of H along the sampled path. */
struct CrossingError : Error {
    using Error::Error;
};

/** File or stream failure, bad magic, version mismatch. */
struct IoError : Error {
    using Error::Error;
};

} // namespace fracground

#endif
