#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorbit {

/// A point of the plane, identified with a complex number re + i·im.
using PlanarPoint = std::complex<double>;
using PointCloud = std::vector<PlanarPoint>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A map descriptor violates one of its parameter invariants.
class DescriptorError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested method is not available for this map family.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// The map degenerates (zero mean radius, |mu| >= 1, ...).
class DegenerateMapError : public Error {
public:
    using Error::Error;
};

/// A trace or plan does not reach deep enough for the request.
class InsufficientDepthError : public Error {
public:
    using Error::Error;
};

/// Synthesis produced no annulus pieces.
class EmptyPlanError : public Error {
public:
    using Error::Error;
};

/// Malformed JSON input or schema mismatch.
class ParseError : public Error {
public:
    using Error::Error;
};

inline bool is_finite(PlanarPoint z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// e^{i theta}
inline PlanarPoint unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace qcorbit
