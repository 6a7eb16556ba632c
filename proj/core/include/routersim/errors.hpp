// errors.hpp: exception types shared across the simulator

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace routersim {

// Invalid configuration or physical parameter. `field()` names the offending input.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// An argument outside the mathematical domain of an operation (negative time, ϖ ≥ 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Non-finite or otherwise unusable intermediate results.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace routersim
