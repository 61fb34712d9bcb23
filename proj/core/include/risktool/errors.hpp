#ifndef RISKTOOL_ERRORS_HPP
#define RISKTOOL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace risktool {

// Base of everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs, specs, or file contents. The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

// Numeric breakdown at solve/evaluation time. The CLI maps these to exit code 1.
class NumericError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public InputError {
public:
    using InputError::InputError;
};

class NonFiniteValue : public InputError {
public:
    using InputError::InputError;
};

class BadProbability : public InputError {
public:
    using InputError::InputError;
};

class BetaOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class IndexOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class BadSpec : public InputError {
public:
    using InputError::InputError;
};

class BadSpectrum : public InputError {
public:
    using InputError::InputError;
};

class BadGroups : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class BadBracket : public InputError {
public:
    using InputError::InputError;
};

class BadSampler : public InputError {
public:
    using InputError::InputError;
};

class SolverFailure : public NumericError {
public:
    using NumericError::NumericError;
};

class NotMonotone : public NumericError {
public:
    using NumericError::NumericError;
};

class NonFinite : public NumericError {
public:
    using NumericError::NumericError;
};

// Divergence guard tripped during training; carries the trace collected so far.
class NonFiniteObjective : public NumericError {
public:
    NonFiniteObjective(const std::string& msg, std::vector<double> trace_prefix)
        : NumericError(msg), trace(std::move(trace_prefix)) {}
    std::vector<double> trace;
};

} // namespace risktool

#endif
