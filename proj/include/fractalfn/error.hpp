#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fractalfn {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two sampled functions live on incompatible grids.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A construction invariant of a domain type was violated.
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Precondition of an operation does not hold for the supplied data.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fixed-point iteration did not reach the requested certificate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double final_step, int iterations)
        : std::runtime_error(what), final_step_(final_step), iterations_(iterations) {}

    double final_step() const noexcept { return final_step_; }
    int iterations() const noexcept { return iterations_; }

private:
    double final_step_;
    int iterations_;
};

/// The approximation search ran out of degrees before reaching the target error.
class DegreeExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fractalfn
