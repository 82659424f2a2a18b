#pragma once

#include <stdexcept>
#include <string>

namespace henon {

enum class ErrorKind {
    DegenerateJacobian,
    Overflow,
    NoAlphaFound,
    NotInEscapeRegion,
    OnDegenerateCurve,
    NotSimpleCritical,
    LeftTube,
    NewtonDivergence,
    LeafParameterizationFailed,
    ContinuationFailure,
    NotClassified,
    OutsideVPrime,
    GraphTransformDiverged,
    GradientVanishesOnLoop,
    OrderMismatch,
    NotUnitSeries,
    NonzeroConstantInner,
    NonInvertibleLinearTerm,
    DegenerateCriticalPoint,
    ParseError,
    ConfigError,
    InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
    throw Error(k, msg);
}

}  // namespace henon
