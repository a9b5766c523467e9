#pragma once

#include <stdexcept>
#include <string>

namespace fsorf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. a pole of Γ).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Parameter block violates its invariants (bad orders, non-integer μ, incompatible modulation).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical integration did not reach its tolerance or its tail cutoff.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed sweep configuration. `field` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ValidationError(message);
}

inline void require_positive(double value, const char* name) {
    if (!(value > 0.0)) throw ValidationError(std::string(name) + " must be positive");
}

}  // namespace detail
}  // namespace fsorf
