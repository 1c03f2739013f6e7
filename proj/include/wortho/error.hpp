#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wortho {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by its arguments.
class precondition_error : public error {
public:
    using error::error;
};

/// Syntax or symbol error in a weight expression.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A numerical procedure failed (precision loss, non-convergence, failed self-check).
class numeric_error : public error {
public:
    using error::error;
};

/// Adaptive integration did not reach the requested tolerance.
class integration_error : public numeric_error {
public:
    integration_error(const std::string& what, double estimate, double error_bound)
        : numeric_error(what + " (estimate " + std::to_string(estimate) + ", error bound " +
                        std::to_string(error_bound) + ")"),
          estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

inline void require(bool condition, const char* message) {
    if (!condition) throw precondition_error(message);
}

} // namespace wortho
