// errors.hpp - exception taxonomy for the library.
#pragma once

#include <stdexcept>
#include <string>

namespace so3l1 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A matrix passed to vee() is not skew-symmetric within tolerance.
struct NonSkewInput : Error {
    using Error::Error;
};

// A matrix expected to be a member of SO(3) fails the orthonormality or
// determinant check at construction.
struct InvalidRotation : Error {
    using Error::Error;
};

// Added-mass with m_a < 0.
struct NegativeMass : Error {
    using Error::Error;
};

// An inertia matrix that must be inverted is (numerically) singular.
struct SingularInertia : Error {
    using Error::Error;
};

// reproject_so3 input with det <= 0 or near rank-deficient.
struct DegenerateMatrix : Error {
    using Error::Error;
};

// The commanded thrust vector has (numerically) zero norm, so the desired
// attitude is undefined.
struct DegenerateThrust : Error {
    using Error::Error;
};

// Euler-angle controller evaluated with pitch too close to +-90 deg.
struct GimbalProximity : Error {
    using Error::Error;
};

// Metrics window contains no samples.
struct EmptyWindow : Error {
    using Error::Error;
};

// The Lyapunov cross-term constant c makes W indefinite.
struct IndefiniteW : Error {
    using Error::Error;
};

// Config text could not be parsed; message carries line number and key.
struct ParseError : Error {
    using Error::Error;
};

// Config parsed but violates an invariant; message names it.
struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace so3l1
