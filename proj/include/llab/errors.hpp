#pragma once

#include <stdexcept>
#include <string>

namespace llab {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: a weight file that does not parse, a model that breaks
// its own invariants, a set outside the weight's domain.
class ConfigError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its stated domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Pointwise evaluation requested at a point where the operator is singular
// (for instance the Hilbert transform at a jump of the input).
class SingularInputError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// An internal cross-check between two independent computations failed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace llab
