#pragma once

#include <stdexcept>
#include <string>

namespace th {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Field construction.
class NonPrimeError : public Error {
public:
    using Error::Error;
};
class EvenCharacteristicError : public Error {
public:
    using Error::Error;
};
class CapExceededError : public Error {
public:
    using Error::Error;
};

// Field arithmetic and character evaluation.
class ZeroElementError : public Error {
public:
    using Error::Error;
};
class DomainMismatchError : public Error {
public:
    using Error::Error;
};

// Character table construction.
class ValidationFailedError : public Error {
public:
    using Error::Error;
};

// Convolution algebra.
class ContextMismatchError : public Error {
public:
    using Error::Error;
};
class NegativeResidualError : public Error {
public:
    using Error::Error;
};
class NotBiEquivariantError : public Error {
public:
    using Error::Error;
};

// Decomposition and spherical functions.
class NonIntegralMultiplicityError : public Error {
public:
    using Error::Error;
};
class NotAConstituentError : public Error {
public:
    using Error::Error;
};
class SingularParameterError : public Error {
public:
    using Error::Error;
};
class UnsupportedInterpretationError : public Error {
public:
    using Error::Error;
};

// Uncertainty module.
class ZeroFunctionError : public Error {
public:
    using Error::Error;
};
class DegenerateChannelError : public Error {
public:
    using Error::Error;
};

// Command line configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace th
