#pragma once

#include <stdexcept>
#include <string>

namespace genhilbert {

// Invalid measure, weight, or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of an operation (e.g. t outside [0,1)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quadrature or eigensolver failed to reach the requested accuracy.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

// An operator integral diverges, so the operator is not defined on the input.
class NotWellDefinedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace genhilbert
