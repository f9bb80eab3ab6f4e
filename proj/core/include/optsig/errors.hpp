#pragma once

#include <stdexcept>
#include <string>

namespace optsig {

// Base class for all solver-domain failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ValidationKind {
    EmptyInstance,
    NegativeValue,
    UnsortedSupport,
    NonPositiveMass,
    MassNotOne,
    LengthMismatch,
};

std::string to_string(ValidationKind kind);

// Raised by validate(); `buyer` is the first offending buyer index, or -1
// when the instance as a whole is at fault.
struct ValidationError : Error {
    ValidationError(ValidationKind kind, int buyer);
    ValidationKind kind;
    int buyer;
};

struct ZeroWelfare : Error {
    ZeroWelfare() : Error("welfare is zero; nothing to normalize") {}
};

struct SearchSpaceTooLarge : Error {
    explicit SearchSpaceTooLarge(const std::string& what) : Error(what) {}
};

struct SupportTooLarge : Error {
    explicit SupportTooLarge(int buyer)
        : Error("buyer " + std::to_string(buyer) + " has more than two support values"),
          buyer(buyer) {}
    int buyer;
};

struct InvalidBlockRef : Error {
    explicit InvalidBlockRef(const std::string& what) : Error(what) {}
};

struct InvalidPermutation : Error {
    explicit InvalidPermutation(const std::string& what) : Error(what) {}
};

struct InvalidEps : Error {
    explicit InvalidEps(const std::string& what) : Error(what) {}
};

struct CompensationOverflow : Error {
    CompensationOverflow()
        : Error("compensation term exceeds 1; input is not welfare-normalized") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace optsig
