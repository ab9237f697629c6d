#pragma once

#include <stdexcept>
#include <string>

namespace meanlab {

// Typed failures for the extended-real conventions and domain preconditions.
// Everything derives from std::runtime_error so callers can catch broadly.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// finite - (+inf) has no consistent value under the sign conventions we use.
struct FiniteMinusInf : Error {
    FiniteMinusInf() : Error("finite minus +inf is undefined") {}
};

// Scaling an extended real by a negative factor would flip +inf to -inf,
// which the value type cannot represent.
struct NegativeScale : Error {
    explicit NegativeScale(double c)
        : Error("negative scale factor " + std::to_string(c)) {}
};

// Weight endpoints 0 and 1 are handled by fiat short-circuits, not by the
// singular-weight machinery; asking the machinery for them is a bug.
struct EndpointLambda : Error {
    explicit EndpointLambda(double lam)
        : Error("lambda = " + std::to_string(lam) +
                " is an endpoint; the singular weight is undefined there") {}
};

struct BadInterval : Error {
    BadInterval(double a, double b)
        : Error("bad interval [" + std::to_string(a) + ", " + std::to_string(b) + "]") {}
};

struct EmptyDomain : Error {
    EmptyDomain() : Error("function has no finite sample") {}
};

struct DimMismatch : Error {
    DimMismatch(int a, int b)
        : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct LambdaMismatch : Error {
    LambdaMismatch(double rule_lam, double lam)
        : Error("quadrature rule built for lambda = " + std::to_string(rule_lam) +
                " used with lambda = " + std::to_string(lam)) {}
};

struct EigenFailure : Error {
    explicit EigenFailure(const std::string& what) : Error("eigen-solve failed: " + what) {}
};

struct ConfigParse : Error {
    ConfigParse(int line, const std::string& what)
        : Error("config line " + std::to_string(line) + ": " + what), line_no(line) {}
    int line_no;
};

} // namespace meanlab
