#pragma once

#include <stdexcept>
#include <string>

namespace liprior {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- model DSL ---

struct SyntaxError : Error {
    int line = 0;
    int column = 0;
    SyntaxError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

struct UnknownVariable : Error {
    using Error::Error;
};
struct UnknownFunction : Error {
    using Error::Error;
};
struct MalformedSupport : Error {
    using Error::Error;
};
struct UnboundVariable : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NotSeparable : Error {
    using Error::Error;
};

// --- numerics / pipeline ---

struct ComputationFailed : Error {
    using Error::Error;
};
struct NotConverged : Error {
    using Error::Error;
};
struct SingularHessian : Error {
    using Error::Error;
};
struct NegativeDeterminant : Error {
    using Error::Error;
};
struct InconclusiveProperness : Error {
    using Error::Error;
};

// --- conservation / maxent / catalog ---

struct EmptyObservations : Error {
    using Error::Error;
};
struct OutOfSupport : Error {
    using Error::Error;
};
struct NoLaws : Error {
    using Error::Error;
};
struct ImproperAtLambda : Error {
    using Error::Error;
};
struct InvalidHyperparameters : Error {
    using Error::Error;
};
struct DominationViolated : Error {
    using Error::Error;
};

}  // namespace liprior
