#pragma once

#include <stdexcept>
#include <string>

namespace isogauss {

/// Bad arguments from a caller: non-prime modulus, d > n, asymmetric matrix...
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured term budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A closed form produced a non-exact division or a value of the wrong
/// shape. Never expected; signals a bug in a formula.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace isogauss
