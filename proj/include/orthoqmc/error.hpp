#pragma once

#include <stdexcept>
#include <string>

namespace orthoqmc {

// Argument outside the mathematical domain of an operation (index < 1, base < 2, k out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Shapes of two inputs do not agree.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-typed but numerically unusable (zero-length direction, non-unit sphere point).
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace orthoqmc
