#pragma once

#include <stdexcept>
#include <string>

namespace mtk {

enum class ErrorKind {
    InvalidInput,
    PrecisionExhausted,
    ZeroInput,
    NotAUnit,
    NotIntegral,
    BadReduction,
    BoundExceeded,
    SmallPrimeUnsupported,
    NotRationalNewform,
    NotSubgroup,
    ConductorMismatch,
    ConductorError,
    DescentResidual,
    CoefficientDrift,
    NoConventionMatches,
    AddViolated,
    KpViolated,
    ToleranceUnreachable,
    UnsupportedCusp,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace mtk
