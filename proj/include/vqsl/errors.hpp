// Exception types for the vqsl library. One class per failure category
// surfaced by the public API; all derive from vqsl::Error.

#pragma once

#include <stdexcept>
#include <string>

namespace vqsl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A matrix required to be Hermitian is not, beyond tolerance.
struct NonHermitianError : Error {
    using Error::Error;
};

// Operand dimensions are incompatible or unsupported.
struct DimensionError : Error {
    using Error::Error;
};

// A density matrix violates Hermiticity, unit trace, or positivity.
struct InvalidStateError : Error {
    using Error::Error;
};

// A scalar parameter lies outside its declared domain.
struct ParamError : Error {
    using Error::Error;
};

// A time grid is empty, unordered, or does not start at zero.
struct GridError : Error {
    using Error::Error;
};

// Adaptive quadrature hit the interval cap without converging.
struct QuadratureError : Error {
    using Error::Error;
};

// A configuration document could not be read (syntax, unknown key).
struct ParseError : Error {
    using Error::Error;
};

// A configuration value failed domain validation.
struct ValidationError : Error {
    using Error::Error;
};

// A file could not be opened or written.
struct IoError : Error {
    using Error::Error;
};

// An operation that needs data received none.
struct EmptyInputError : Error {
    using Error::Error;
};

}  // namespace vqsl
