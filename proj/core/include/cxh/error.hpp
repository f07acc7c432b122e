#pragma once

#include <stdexcept>
#include <string>

namespace cxh {

/// Thrown when an argument violates an operation's precondition
/// (negative diameter, probabilities that do not sum to one, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a computation cannot produce a finite, trustworthy result
/// (overflow in an exponential, quadrature that does not converge, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed distribution text input. Carries the offending line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cxh
