#pragma once

#include <stdexcept>
#include <string>

namespace csmp {

/// Bad argument or violated precondition (CLI exit code 2).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be read, parsed or written (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical guard tripped, e.g. a degenerate conjugate pair (CLI exit code 4).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InvalidArgument(message);
    }
}

}  // namespace detail
}  // namespace csmp
