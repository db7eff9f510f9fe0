#include "lindboot/errors.hpp"

namespace lindboot {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::EmptyObjective: return "EmptyObjective";
    case ErrorCode::NonHermitianObjective: return "NonHermitianObjective";
    case ErrorCode::RealnessViolation: return "RealnessViolation";
    case ErrorCode::NonPositiveCoupling: return "NonPositiveCoupling";
    case ErrorCode::NegativeDelta: return "NegativeDelta";
    case ErrorCode::DegenerateTolerance: return "DegenerateTolerance";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SiteOutOfRange: return "SiteOutOfRange";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace lindboot
