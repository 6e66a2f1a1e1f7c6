#pragma once

#include <stdexcept>
#include <string>

namespace bethe {

/// Mixing coefficient domains that have no common product (e.g. commutative
/// with noncommutative).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A coefficient was requested outside the window in which it is certified.
class WindowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Violated precondition on an input (non-antidominant shift, singular twist, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation not implemented for the given parameters (e.g. gl2 engine at n != 2).
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bethe
