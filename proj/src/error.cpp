#include "so3mes/error.hpp"

namespace so3mes {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidOperator: return "invalid-operator";
        case ErrorCode::InvalidConfig: return "invalid-config";
        case ErrorCode::NotMaximallyEntangled: return "not-maximally-entangled";
        case ErrorCode::InvalidAxis: return "invalid-axis";
        case ErrorCode::DegenerateGeometry: return "degenerate-geometry";
        case ErrorCode::Accuracy: return "accuracy";
        case ErrorCode::NoSolution: return "no-solution";
        case ErrorCode::InternalConsistency: return "internal-consistency";
        case ErrorCode::InsufficientResolution: return "insufficient-resolution";
        case ErrorCode::NonCommensurateClosure: return "non-commensurate-closure";
        case ErrorCode::NotApplicable: return "not-applicable";
        case ErrorCode::InvalidGeometry: return "invalid-geometry";
        case ErrorCode::InconsistentParameters: return "inconsistent-parameters";
    }
    return "unknown";
}

}  // namespace so3mes
