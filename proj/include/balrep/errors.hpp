#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace balrep {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- certified arithmetic --
struct NonPositiveInput : Error {
    using Error::Error;
};
struct DivisorNotCertifiedNonzero : Error {
    using Error::Error;
};
// Raised when an interval is too wide to decide the requested question.
// Callers that own a re-evaluation path retry at a doubled scale.
struct PrecisionInsufficient : Error {
    using Error::Error;
};

// -- repdigits --
struct DigitOutOfRange : Error {
    using Error::Error;
};
struct LengthOutOfRange : Error {
    using Error::Error;
};

// -- continued fractions --
struct NoCertifiedQuotients : Error {
    using Error::Error;
};
struct InsufficientCertifiedTerms : Error {
    using Error::Error;
};

// -- heights / lower bounds --
struct NotLowestTerms : Error {
    using Error::Error;
};
struct InvalidInstance : Error {
    using Error::Error;
};
struct NoCrossingFound : Error {
    using Error::Error;
};

// -- reduction --
struct HypothesisViolated : Error {
    using Error::Error;
};
struct DenominatorTooSmall : Error {
    using Error::Error;
};
struct EpsilonNotPositive : Error {
    using Error::Error;
};

// -- solver --
struct VerificationFailure : Error {
    using Error::Error;
};
struct StageFailure : Error {
    using Error::Error;
};

// -- expression mini-language --
struct SyntaxError : Error {
    SyntaxError(std::size_t position, const std::string& expected)
        : Error("syntax error at offset " + std::to_string(position) +
                ": expected " + expected),
          position(position),
          expected(expected) {}
    std::size_t position;
    std::string expected;
};
struct DomainError : Error {
    explicit DomainError(const std::string& subexpr, const std::string& why)
        : Error("domain error in `" + subexpr + "`: " + why), subexpression(subexpr) {}
    std::string subexpression;
};

}  // namespace balrep
