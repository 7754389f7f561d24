#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mordrive/drive_model.hpp"
#include "mordrive/reduction.hpp"

namespace mordrive::design {

enum class Method { Conventional, Mor };

[[nodiscard]] const char* to_string(Method m) noexcept;

struct DesignReport {
    Method method = Method::Conventional;
    double K = 0.0;
    double kc = 0.0;
    double tc = 0.0;
    std::optional<mor::ReductionResult> reduced_model;
    std::vector<Complex> closed_loop_poles;
    double achieved_zeta = 0.0;
    double natural_frequency = 0.0;
    std::vector<std::string> warnings;
};

// Damping ratio and natural frequency of the dominant (slowest) pole pair.
struct Damping {
    double zeta = 0.0;
    double omega_n = 0.0;
};
[[nodiscard]] Damping dominant_damping(const std::vector<Complex>& poles);

// Smallest K > 0 giving damping zeta for the closed loop
//   d2 s^2 + (d1 + K c1) s + (d0 + K)
// of a second-order model c(s)/d(s) with c = 1 + c1 s. Throws NoPositiveGain or
// NoRealGain (with the quadratic's discriminant and roots attached).
[[nodiscard]] double gain_for_damping(const Polynomial& d, double c1, double zeta);

// (1+sTm) ~ sTm and Tc cancelling T2 leave (1+sT1)(1+sTr) + K; K is matched
// to the standard second-order form at the requested damping.
[[nodiscard]] DesignReport design_conventional(const drive::DerivedDriveModel& model);

// Reduces the loop shape to second order and matches its closed-loop
// characteristic polynomial to the requested damping.
[[nodiscard]] DesignReport design_via_mor(const drive::DerivedDriveModel& model,
                                          const mor::ReductionConfig& cfg);

struct SweepPoint {
    double kc = 0.0;
    bool stable = false;
    std::optional<double> overshoot_pct;
    std::optional<double> settling_2pct;
    std::optional<double> rise_10_90;
    std::optional<double> ise_vs_reference;
    std::optional<std::string> error;
};

// Closes the full current loop (integrator and back-EMF zero included) for
// each Kc on a linear grid and measures the unit-step response.
[[nodiscard]] std::vector<SweepPoint> sweep_gain(const drive::DerivedDriveModel& model, double kc_min,
                                                 double kc_max, int steps);

inline constexpr int kMaxSweepSteps = 100000;

// One sweep point; exposed for targeted checks.
[[nodiscard]] SweepPoint evaluate_gain(const drive::DerivedDriveModel& model, double kc);

}  // namespace mordrive::design
