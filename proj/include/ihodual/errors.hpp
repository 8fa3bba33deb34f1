#pragma once

#include <stdexcept>
#include <string>

namespace ihodual {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Gamma-function poles and Kummer parameter poles.
class PoleError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

class SubcriticalCoupling : public DomainError {
public:
    using DomainError::DomainError;
};

class AccuracyLoss : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class ContourError : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class StepSizeError : public Error {
public:
    using Error::Error;
};

class PhaseUnwrapError : public Error {
public:
    using Error::Error;
};

class NoCrossing : public Error {
public:
    using Error::Error;
};

class InsufficientSpan : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ihodual
