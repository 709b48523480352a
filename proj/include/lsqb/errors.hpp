#pragma once

#include <stdexcept>
#include <string>

namespace lsqb {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or missing user-supplied parameter (CLI exit code 2).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Argument outside the open domain of a formula.
class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// A precondition of a bound does not hold.
class PreconditionError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class NonSymmetricError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Malformed or unknown run-config content.
class ConfigError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// The 1-D optimizer found no point where the objective is finite.
class NoFinitePointError : public Error {
public:
    using Error::Error;
};

class RankDeficientError : public Error {
public:
    using Error::Error;
};

// Too many invalid Monte-Carlo trials (CLI exit code 4).
class SimulationQualityError : public Error {
public:
    using Error::Error;
};

class RangeExhaustedError : public Error {
public:
    using Error::Error;
};

// File read/write failure (CLI exit code 3).
class IoError : public Error {
public:
    using Error::Error;
};

// Process exit code associated with an exception thrown by the library.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace lsqb
