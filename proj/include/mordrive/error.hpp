#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mordrive {

enum class ErrorCode {
    InvalidArgument,
    ImproperTransferFunction,
    BadOrder,
    GridMismatch,
    ComplexMotorPoles,
    TimeConstantOrdering,
    Unsupported,
    NonConvergence,
    NotFactorable,
    ZeroConstantTerm,
    ZeroDcGain,
    NotNormalized,
    DegenerateLoop,
    PoleAtOrigin,
    MatchInfeasible,
    NoPositiveGain,
    NoRealGain,
    SimulationDiverged,
    NotSettled,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

// Validation errors are caused by bad inputs; everything else is a numeric
// failure of an otherwise well-formed request.
[[nodiscard]] bool is_validation_error(ErrorCode code) noexcept;

// Named numeric values attached to an error (discriminants, offending roots).
using ErrorDetails = std::vector<std::pair<std::string, double>>;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, ErrorDetails details = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          details_(std::move(details)) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const ErrorDetails& details() const noexcept { return details_; }

    // Returns the named detail or NaN when absent.
    [[nodiscard]] double detail(const std::string& name) const noexcept;

private:
    ErrorCode code_;
    ErrorDetails details_;
};

}  // namespace mordrive
