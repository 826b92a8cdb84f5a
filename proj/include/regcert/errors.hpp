#ifndef REGCERT_ERRORS_HPP
#define REGCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace regcert {

// Every failure mode the library can signal. CLI exit codes are derived
// from the kind, never from message text.
enum class ErrKind {
    DivisionByZero,
    SizeLimit,
    NotSymmetric,
    CyclicSearchExhausted,
    NondescendableLeadingPoly,
    CoefficientNotInA,
    NotRegular,
    IrrationalExponents,
    CapTooSmall,
    CenterNotOnLocus,
    IrrationalCenter,
    StepLimitExceeded,
    ComponentNotInChart,
    CurveInsidePolarLocus,
    NotSplittable,
    IntegrabilityViolation,
    NotNegativeDefinite,
    PrerequisiteFailed,
    NotFlat,
    ParseError,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

inline const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::DivisionByZero: return "DivisionByZero";
        case ErrKind::SizeLimit: return "SizeLimit";
        case ErrKind::NotSymmetric: return "NotSymmetric";
        case ErrKind::CyclicSearchExhausted: return "CyclicSearchExhausted";
        case ErrKind::NondescendableLeadingPoly: return "NondescendableLeadingPoly";
        case ErrKind::CoefficientNotInA: return "CoefficientNotInA";
        case ErrKind::NotRegular: return "NotRegular";
        case ErrKind::IrrationalExponents: return "IrrationalExponents";
        case ErrKind::CapTooSmall: return "CapTooSmall";
        case ErrKind::CenterNotOnLocus: return "CenterNotOnLocus";
        case ErrKind::IrrationalCenter: return "IrrationalCenter";
        case ErrKind::StepLimitExceeded: return "StepLimitExceeded";
        case ErrKind::ComponentNotInChart: return "ComponentNotInChart";
        case ErrKind::CurveInsidePolarLocus: return "CurveInsidePolarLocus";
        case ErrKind::NotSplittable: return "NotSplittable";
        case ErrKind::IntegrabilityViolation: return "IntegrabilityViolation";
        case ErrKind::NotNegativeDefinite: return "NotNegativeDefinite";
        case ErrKind::PrerequisiteFailed: return "PrerequisiteFailed";
        case ErrKind::NotFlat: return "NotFlat";
        case ErrKind::ParseError: return "ParseError";
        case ErrKind::Internal: return "Internal";
    }
    return "Unknown";
}

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) {
    throw Error(kind, std::string(err_kind_name(kind)) + ": " + msg);
}

} // namespace regcert

#endif
