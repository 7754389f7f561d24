#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mordrive/controller_design.hpp"
#include "mordrive/drive_model.hpp"
#include "mordrive/reduction.hpp"
#include "mordrive/simulation.hpp"
#include "mordrive/transfer_function.hpp"

namespace mordrive::io {

using nlohmann::json;

// Shortest decimal that parses back to the same double; always '.' as the
// decimal separator.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string sha256_hex(std::string_view bytes);

// {"num": [...ascending...], "den": [...ascending...]}
[[nodiscard]] TransferFunction tf_from_json(const json& j);
[[nodiscard]] json tf_to_json(const TransferFunction& g);

// Motor files use snake_case keys with unit suffixes ("ra_ohm", "la_h", ...).
// Throws InvalidArgument naming the first missing or malformed key.
[[nodiscard]] drive::MotorDriveParams motor_from_json(const json& j);
[[nodiscard]] json motor_to_json(const drive::MotorDriveParams& p);

[[nodiscard]] json to_json(const StabilityFactorization& f);
[[nodiscard]] json to_json(const mor::ReductionResult& r);
[[nodiscard]] json to_json(const drive::DerivedDriveModel& m);
[[nodiscard]] json to_json(const design::DesignReport& r);

[[nodiscard]] std::string step_csv(const sim::StepTrace& tr);
[[nodiscard]] std::string bode_csv(const sim::BodeTrace& tr);
[[nodiscard]] std::string sweep_csv(const std::vector<design::SweepPoint>& points);

}  // namespace mordrive::io
