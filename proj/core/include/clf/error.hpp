#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or bad input data (maps to CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed on valid input (maps to CLI exit code 3).
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Too few points (samples, tail points, series length) for the requested operation.
class InsufficientData : public InputError {
public:
    using InputError::InputError;
};

/// Sample has no spread (constant data).
class DegenerateSample : public InputError {
public:
    using InputError::InputError;
};

class GridTooNarrow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace clf
