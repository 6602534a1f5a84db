#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpcyl {

/// Argument outside the domain of a closed-form quantity.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A field whose tails cannot be lifted (|psi0| < 1/2 somewhere in a tail).
class LiftError : public std::runtime_error {
public:
    explicit LiftError(const std::string& what, long iteration = -1)
        : std::runtime_error(what), iteration_(iteration) {}
    long iteration() const noexcept { return iteration_; }

private:
    long iteration_;
};

/// Malformed or truncated snapshot file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field for which a requested ratio or rescaling is undefined.
class DegenerateField : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Endpoint predicates of a bisection do not bracket the target.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two fields that must share a grid do not.
class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace gpcyl
