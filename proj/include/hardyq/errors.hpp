#pragma once

#include <stdexcept>
#include <string>

namespace hardyq {

// Error taxonomy mapped to CLI exit codes:
//   ValidationError -> 2, DomainViolation -> 3, NumericFailure -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class DomainViolation : public Error {
public:
    using Error::Error;
};

class NumericFailure : public Error {
public:
    using Error::Error;
};

// t < 0 passed to a semigroup-only operation (causality condition).
class SemigroupDomainError : public DomainViolation {
public:
    using DomainViolation::DomainViolation;
};

class IncompatibleGridsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Zero-norm wave function makes the forbidden-mass ratio undefined.
class ZeroNormError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Grid too narrow around a resonance pole.
class CoverageError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Wave function fails the Hardy precondition of an observable pairing.
class NotAnObservableError : public DomainViolation {
public:
    using DomainViolation::DomainViolation;
};

// Amplitude requested exactly at the pole.
class PoleEvaluationError : public DomainViolation {
public:
    using DomainViolation::DomainViolation;
};

class RankDeficiencyError : public NumericFailure {
public:
    using NumericFailure::NumericFailure;
};

class FitFailureError : public NumericFailure {
public:
    FitFailureError(const std::string& msg, std::string trace)
        : NumericFailure(msg), trace_(std::move(trace)) {}
    const std::string& trace() const { return trace_; }

private:
    std::string trace_;
};

class InsufficientDataError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& msg, long line) : ValidationError(msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_ = -1;
};

}  // namespace hardyq
