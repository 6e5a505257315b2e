#pragma once

#include <stdexcept>
#include <string>

namespace p4pha {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric branch supplied for s does not satisfy s^2 = -beta.
class BranchMismatchError : public Error {
public:
    using Error::Error;
};

/// Evaluation of a negative power of f at f = 0.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (n = 0 for R_n, N < 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Term-count ceiling exceeded while expanding states.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, int level_reached)
        : Error(what), level_reached_(level_reached) {}
    int level_reached() const noexcept { return level_reached_; }

private:
    int level_reached_;
};

/// ODE integration could not produce a usable trajectory.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double x)
        : Error(what), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// State gauge incompatible with the trajectory (W1 gauge needs beta < 0).
class GaugeError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized data or configuration.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Invariant that can only fail through a bug in this library.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace p4pha
