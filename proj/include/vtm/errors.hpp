#pragma once

#include <stdexcept>
#include <string>

namespace vtm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative solver hit its iteration cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition (not a domain restriction) was violated.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The true result does not fit in a double.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A user-supplied function failed (threw or returned a non-finite value).
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, long index)
        : std::runtime_error(what), index_(index) {}

    /// Sample index at which evaluation failed, or -1 when not tied to a node.
    [[nodiscard]] long index() const noexcept { return index_; }

private:
    long index_;
};

/// No budget up to the search cap met the requested accuracy.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, int n_max, int omega = -1)
        : std::runtime_error(what), n_max_(n_max), omega_(omega) {}

    [[nodiscard]] int n_max() const noexcept { return n_max_; }
    /// Frequency of the failing resolution search, or -1 outside such searches.
    [[nodiscard]] int omega() const noexcept { return omega_; }

private:
    int n_max_;
    int omega_;
};

}  // namespace vtm
