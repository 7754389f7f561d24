#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mordrive/transfer_function.hpp"

namespace mordrive::sim {

struct StepTrace {
    std::vector<double> t;
    std::vector<double> y;
    double dt = 0.0;
    double input_amplitude = 1.0;
    std::vector<std::string> warnings;
};

struct BodeTrace {
    std::vector<double> omega;
    std::vector<double> mag_db;
    std::vector<double> phase_deg;
    // Set when the grid hits a pole on the imaginary axis.
    bool singular = false;
};

struct StepGrid {
    double t_final = 0.0;
    double dt = 0.0;
};

// dt = smallest time constant / 20, t_final = 8 * largest time constant.
[[nodiscard]] StepGrid default_step_grid(const TransferFunction& g);

inline constexpr std::size_t kMaxSamples = 5'000'000;

// Step response of a controllable-canonical realization integrated with
// classical RK4 at a fixed step. A "stiffness" warning is attached when dt
// exceeds a tenth of the smallest time constant.
[[nodiscard]] StepTrace step_response(const TransferFunction& g, double t_final, double dt,
                                      double amplitude = 1.0);
[[nodiscard]] StepTrace step_response(const TransferFunction& g);

// `points_per_decade` log-spaced samples from omega_min to omega_max, both ends
// included.
[[nodiscard]] std::vector<double> log_grid(double omega_min, double omega_max, int points_per_decade);

[[nodiscard]] BodeTrace bode(const TransferFunction& g, double omega_min, double omega_max,
                             int points_per_decade);

// Trapezoidal integral of (a.y - b.y)^2. Throws GridMismatch unless both traces
// share the same time grid.
[[nodiscard]] double ise(const StepTrace& a, const StepTrace& b);

// Trapezoidal integral of (y - reference)^2.
[[nodiscard]] double ise_against(const StepTrace& trace, double reference);

struct ResponseMetrics {
    double overshoot_pct = 0.0;
    double settling_2pct = 0.0;
    double rise_10_90 = 0.0;
    double final_value = 0.0;
};

// Overshoot = (peak - final) / final * 100, floored at zero; settling is the
// last time the response leaves the +/-2% band; rise is the 10%->90%
// interval. final_value is the mean of the last 5% of samples, which must all
// lie within +/-2% of that mean (NotSettled otherwise).
[[nodiscard]] ResponseMetrics response_metrics(const StepTrace& trace);

}  // namespace mordrive::sim
