#pragma once

#include <stdexcept>
#include <string>

namespace phasewave {

// Base type for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user-supplied parameters (bounds, counts, missing fields).
// The message names the offending field.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Two objects that must live on the same grid / representation do not.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

// An operation met a state it cannot handle (zero norm, all-zero field).
class DegenerateStateError : public Error {
public:
    explicit DegenerateStateError(const std::string& what) : Error(what) {}
};

// A user-supplied function produced a non-finite value on the grid.
class NumericDomainError : public Error {
public:
    explicit NumericDomainError(const std::string& what) : Error(what) {}
};

// Characteristics left a truncated (non-periodic) grid and carried away
// more mass than the advection step tolerates.
class OutflowError : public Error {
public:
    OutflowError(const std::string& what, double lost_fraction)
        : Error(what), lost_mass_fraction(lost_fraction) {}
    double lost_mass_fraction;
};

// Requested an operation outside the supported family
// (e.g. hidden-pair closed forms for a non-quadratic Hamiltonian).
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(what) {}
};

// A documented precondition was violated at call time; the message reports
// the measured quantity that broke it.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Filesystem trouble while writing outputs.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace phasewave
