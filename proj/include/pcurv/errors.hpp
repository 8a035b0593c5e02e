#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcurv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: polynomial text, scenario files, shapes.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t position)
        : InputError(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

/// Operands live over different rings or algebroids.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// A configured size or degree bound was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A computation hit a mathematical obstruction (non-central value,
/// non-flat module, higher-order p-curvature, ...).
class MathError : public Error {
public:
    using Error::Error;
};

}  // namespace pcurv
