#pragma once

#include <stdexcept>
#include <string>

namespace gpl {

// All library failures are reported as typed errors carrying a stable code.
// Codes are part of the tool's interface: the CLI maps them to report
// entries, and tests match on them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace err {
inline constexpr const char* DimensionMismatch   = "DimensionMismatch";
inline constexpr const char* NonHermitianInput   = "NonHermitianInput";
inline constexpr const char* IllFormedQuotient   = "IllFormedQuotient";
inline constexpr const char* NotInSubspace       = "NotInSubspace";
inline constexpr const char* SingularMatrix      = "SingularMatrix";
inline constexpr const char* SingularTimeStep    = "SingularTimeStep";
inline constexpr const char* NotCauchyHyperbolic = "NotCauchyHyperbolic";
inline constexpr const char* WindowTooSmall      = "WindowTooSmall";
inline constexpr const char* NegativeSquaredFrequency = "NegativeSquaredFrequency";
inline constexpr const char* ZeroModePolicyRequired   = "ZeroModePolicyRequired";
inline constexpr const char* UnstableTimeStep    = "UnstableTimeStep";
inline constexpr const char* InternalContradiction = "InternalContradiction";
inline constexpr const char* ParseError          = "ParseError";
inline constexpr const char* SyntaxError         = "SyntaxError";
inline constexpr const char* UnknownSymbol       = "UnknownSymbol";
inline constexpr const char* UnknownRuleSet      = "UnknownRuleSet";
inline constexpr const char* NonTerminating      = "NonTerminating";
inline constexpr const char* NotLocallyConfluent = "NotLocallyConfluent";
inline constexpr const char* BadRuleOrientation  = "BadRuleOrientation";
inline constexpr const char* UnsupportedModel    = "UnsupportedModel";
inline constexpr const char* SupportViolation    = "SupportViolation";
inline constexpr const char* IntertwiningViolated = "IntertwiningViolated";
inline constexpr const char* PositivityViolated  = "PositivityViolated";
inline constexpr const char* ConstraintViolation = "ConstraintViolation";
inline constexpr const char* ConstructionFailed  = "ConstructionFailed";
inline constexpr const char* LimitExceeded       = "LimitExceeded";
inline constexpr const char* IoError             = "IoError";
} // namespace err

[[noreturn]] inline void fail(const char* code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, const char* code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace gpl
