#pragma once

#include <stdexcept>
#include <string>

namespace oscint {

// Base for everything thrown on purpose by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Phase family outside what an operation supports (e.g. general polynomials
// where only monomial or two-term diagonal phases are handled).
struct UnsupportedFamily : Error {
    using Error::Error;
};

// Argument outside the mathematical domain (Re lambda <= 0, r <= 0, ...).
struct DomainError : Error {
    using Error::Error;
};

// A numeric routine converged, but not to the requested accuracy.
struct AccuracyError : Error {
    double achieved;
    AccuracyError(const std::string& msg, double achieved_)
        : Error(msg + " (achieved " + std::to_string(achieved_) + ")"), achieved(achieved_) {}
};

// Continuation requested without a declared expansion on the input.
struct NeedsExpansion : Error {
    using Error::Error;
};

// Expansion terms fall outside the candidate exponent lattice.
struct LatticeMismatch : Error {
    using Error::Error;
};

// Region combination selects no component.
struct EmptyRegion : Error {
    using Error::Error;
};

// Least-squares system too ill-conditioned to trust.
struct IllConditioned : Error {
    double condition;
    IllConditioned(const std::string& msg, double cond)
        : Error(msg + " (condition " + std::to_string(cond) + ")"), condition(cond) {}
};

// Operation requires the region's boundary current to sit at the origin.
struct BoundaryNotAtOrigin : Error {
    using Error::Error;
};

// Text input rejected; position is a 0-based byte offset into the input.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Exact integer arithmetic left the representable range.
struct OverflowError : Error {
    using Error::Error;
};

}  // namespace oscint
