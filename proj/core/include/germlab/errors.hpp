#pragma once

#include <stdexcept>
#include <string>

namespace germlab {

/// Base class for all germlab errors. Subclasses mirror the failure modes of
/// the individual operations so callers can catch precisely.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent germ/homeomorphism description.
struct SpecError : Error {
    using Error::Error;
};

/// An evaluation escaped the representable range (|result| > 1e12).
struct OutOfRange : Error {
    using Error::Error;
};

/// Numeric inversion failed to reach the residual tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

/// Inversion requested outside the injectivity domain.
struct OutOfDomain : Error {
    using Error::Error;
};

/// Regions passed to an orbit operation are not properly nested.
struct BadRegions : Error {
    using Error::Error;
};

/// Orbit start lies outside the enclosing region.
struct StartOutsideV : Error {
    using Error::Error;
};

/// A boundary sample fell in neither the stable nor the unstable set.
struct NeitherDetected : Error {
    using Error::Error;
};

/// Petal construction rejected: forward invariance failed at the threshold.
struct ThresholdTooSmall : Error {
    using Error::Error;
};

/// The petal permutation is not a uniform index shift.
struct NotAShift : Error {
    using Error::Error;
};

/// A sector could not be made forward invariant.
struct InvarianceFailure : Error {
    using Error::Error;
};

/// Disc orbit does not contract; no fundamental annulus exists.
struct NotContracting : Error {
    using Error::Error;
};

/// Boundary curve is not star-shaped about the origin.
struct ParametrizationFold : Error {
    using Error::Error;
};

/// Petal-aligned coordinate branch failed to be single-valued.
struct BranchError : Error {
    using Error::Error;
};

/// Fatou coordinate requested at (numerically) the fixed point.
struct OriginSingularity : Error {
    using Error::Error;
};

}  // namespace germlab
