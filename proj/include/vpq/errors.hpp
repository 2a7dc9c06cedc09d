#pragma once

#include <stdexcept>
#include <string>

namespace vpq {

// Error taxonomy, grouped by the process exit status the CLI maps them to:
//   ValidationError -> 1, InfeasibleError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs: out-of-range parameters, malformed files, schema violations.
class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyRangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class StepNotFoundError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Well-formed request with no feasible answer.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Requested operating point exceeds the rotor's pitch envelope.
class OutOfEnvelopeError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class NoSolutionError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class OverweightError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

// Numerical breakdowns: non-convergence, singular systems, diverging states.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularJacobianError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NumericalBlowupError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace vpq
