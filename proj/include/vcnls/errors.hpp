#pragma once

#include <stdexcept>
#include <string>

namespace vcnls {

// Base of everything we throw on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments / preconditions violated by the caller.  CLI maps these to exit 2.
struct ValidationError : Error {
    using Error::Error;
};

// Numerical process failed (did not converge, left its region of validity, ...).
// CLI maps these to exit 3.
struct NumericalError : Error {
    using Error::Error;
};

// --- argument-class errors -------------------------------------------------

// Lower parameter of 0F1 hit a nonpositive integer.
struct PoleError : ValidationError {
    using ValidationError::ValidationError;
};

// Time outside the validity interval of a coefficient case, or an evaluation
// point outside a stored trajectory.
struct DomainError : ValidationError {
    using ValidationError::ValidationError;
};

// Unknown builtin case id.
struct UnknownCaseError : ValidationError {
    using ValidationError::ValidationError;
};

// Coupling h does not satisfy the compatibility relation required to map the
// system onto the constant-coefficient one.
struct IntegrabilityViolation : ValidationError {
    using ValidationError::ValidationError;
};

// --- numerical-class errors ------------------------------------------------

// Series / continued fraction / iteration failed to converge.
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

// Dispersion coefficient a(t) vanished where we must divide by it.
struct SingularCoefficientError : NumericalError {
    using NumericalError::NumericalError;
};

// Adaptive ODE integration failed (step budget exhausted, step underflow).
struct IntegrationError : NumericalError {
    using NumericalError::NumericalError;
};

// A trajectory reached (or was asked to cross) a zero of mu(t), where the
// solution amplitude diverges.
struct BlowupEncountered : NumericalError {
    using NumericalError::NumericalError;
};

// Sampled field oscillates too fast for the requested grid.
struct GridTooCoarse : NumericalError {
    using NumericalError::NumericalError;
};

// Time step collapsed during method-of-lines evolution.
struct StiffnessError : NumericalError {
    using NumericalError::NumericalError;
};

// Field energy reached the edge of the box under zero boundary conditions.
struct BoundaryLeakError : NumericalError {
    using NumericalError::NumericalError;
};

// Rational expression evaluated too close to a zero of its denominator.
struct SingularPointError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace vcnls
