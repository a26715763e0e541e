#pragma once

#include <stdexcept>
#include <string>

namespace beattylab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An interval comparison that cannot be decided at the precision the caller
// supplied. Never raised for exact surd inputs.
struct UndecidableAtPrecision : Error {
    using Error::Error;
};

// A refinement loop ran out of certified digits (fixed-width interval input,
// or the internal precision cap was reached).
struct PrecisionExhausted : Error {
    using Error::Error;
};

struct InsufficientConvergents : Error {
    using Error::Error;
};

struct CapacityExceeded : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct NotFoundBelowCap : Error {
    explicit NotFoundBelowCap(const std::string& msg, unsigned long long cap_)
        : Error(msg), cap(cap_) {}
    unsigned long long cap;
};

// A validated construction (sandwich polynomials) failed its own checks.
// Signals an implementation bug, not bad input.
struct ConstructionFailed : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace beattylab
