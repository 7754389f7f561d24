#include "mordrive/error.hpp"

#include <limits>

namespace mordrive {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ImproperTransferFunction: return "ImproperTransferFunction";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ComplexMotorPoles: return "ComplexMotorPoles";
        case ErrorCode::TimeConstantOrdering: return "TimeConstantOrdering";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NotFactorable: return "NotFactorable";
        case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorCode::ZeroDcGain: return "ZeroDcGain";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::DegenerateLoop: return "DegenerateLoop";
        case ErrorCode::PoleAtOrigin: return "PoleAtOrigin";
        case ErrorCode::MatchInfeasible: return "MatchInfeasible";
        case ErrorCode::NoPositiveGain: return "NoPositiveGain";
        case ErrorCode::NoRealGain: return "NoRealGain";
        case ErrorCode::SimulationDiverged: return "SimulationDiverged";
        case ErrorCode::NotSettled: return "NotSettled";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::ImproperTransferFunction:
        case ErrorCode::BadOrder:
        case ErrorCode::GridMismatch:
        case ErrorCode::ComplexMotorPoles:
        case ErrorCode::TimeConstantOrdering:
        case ErrorCode::Unsupported:
            return true;
        default:
            return false;
    }
}

double Error::detail(const std::string& name) const noexcept {
    for (const auto& [key, value] : details_) {
        if (key == name) return value;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace mordrive
