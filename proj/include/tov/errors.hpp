#pragma once

#include <stdexcept>
#include <string>

namespace tov {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Order construction: covers contain a directed cycle between distinct elements.
struct CycleError : Error {
    using Error::Error;
};

// Invalid element or label index.
struct IndexError : Error {
    using Error::Error;
};

// Enumeration would exceed the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Constructed object would exceed a configured size limit.
struct SizeError : Error {
    using Error::Error;
};

// Operands live on different posets or have mismatched lengths.
struct DimMismatch : Error {
    using Error::Error;
};

// Operands must have equal (or unit) total mass.
struct MassMismatch : Error {
    using Error::Error;
};

// Stochastic dominance precondition failed.
struct NotDominated : Error {
    using Error::Error;
};

// Kernel monotonicity precondition failed.
struct NotMonotone : Error {
    using Error::Error;
};

// No contraction certificate found within the power cap (inconclusive).
struct NoCertificate : Error {
    using Error::Error;
};

// Dyadic depth cap exceeded.
struct DepthExceeded : Error {
    using Error::Error;
};

// Invalid model or operation parameters.
struct BadParams : Error {
    using Error::Error;
};

// Malformed flow network.
struct BadNetwork : Error {
    using Error::Error;
};

// A checked mathematical property failed on a concrete instance.
struct AssertionFailure : Error {
    using Error::Error;
};

// Invalid experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

// File input/output failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace tov
