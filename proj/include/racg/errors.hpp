#pragma once

#include <stdexcept>
#include <string>

namespace racg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed graph, rational, or parameters outside a segment.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical certificate (residual, tolerance) could not be met.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Input outside an operation's geometric domain (e.g. a point not in H^{p,q}).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Chamber reduction ran out of steps.
class ReductionError : public Error {
public:
    using Error::Error;
};

/// Enumeration hit its element budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, std::size_t reached)
        : Error(what), reached_(reached) {}
    std::size_t reached() const { return reached_; }

private:
    std::size_t reached_;
};

}  // namespace racg
