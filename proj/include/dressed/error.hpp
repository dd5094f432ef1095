// error.hpp: exception types shared by all dressed-states modules

#pragma once

#include <stdexcept>
#include <string>

namespace dressed {

// Base class; every failure raised by the library derives from it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid physical parameter. field() names the offending key.
class ParameterError : public Error {
public:
    ParameterError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Malformed request that is not a physical parameter (bad k_max, pole argument, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

// Root search, quadrature or eigensolver did not reach its target.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// A negative Omega^2 normal mode (runaway solution).
class StabilityError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

// Two quantities that must stay apart coincided (pole hit, resonant linearization).
class SingularityError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

// Factorial-size guard for expansion coefficients.
class OverflowGuard : public InputError {
public:
    using InputError::InputError;
};

} // namespace dressed
