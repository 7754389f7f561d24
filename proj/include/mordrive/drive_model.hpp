#pragma once

#include <optional>

#include "mordrive/transfer_function.hpp"

namespace mordrive::drive {

// Nameplate and converter data of a separately excited DC motor drive, SI
// units throughout.
struct MotorDriveParams {
    double rated_voltage = 0.0;        // V
    double rated_current = 0.0;        // A
    double ra = 0.0;                   // armature resistance, ohm
    double la = 0.0;                   // armature inductance, H
    double j = 0.0;                    // inertia, kg m^2
    double bt = 0.0;                   // total friction, N m / (rad/s)
    double kb = 0.0;                   // back-EMF constant, V / (rad/s)
    double supply_line_voltage = 0.0;  // V rms, line to line
    double vcm = 0.0;                  // maximum control voltage, V
    double imax = 0.0;                 // maximum permitted current, A
    double tr = 0.00138;               // converter delay, s
    double tc = 0.0;                   // current controller time constant, s
    double zeta = 0.707;               // damping target

    // Informational only; the speed loop is not designed here.
    std::optional<double> rated_speed_rpm;
    std::optional<double> tacho_gain;
    std::optional<double> tacho_time_constant;
};

// The 220 V / 8.3 A reference drive with Tc = 30 ms.
[[nodiscard]] MotorDriveParams reference_drive();

// Throws InvalidArgument naming the first offending field.
void validate(const MotorDriveParams& p);

struct DerivedDriveModel {
    MotorDriveParams params;
    double k1 = 0.0;                     // motor gain, A/V
    double t1 = 0.0;                     // slower electrical time constant, s
    double t2 = 0.0;                     // faster electrical time constant, s
    double tm = 0.0;                     // mechanical time constant J/Bt, s
    double kr = 0.0;                     // converter gain, V/V
    double hc = 0.0;                     // current transducer gain, V/A
    double rated_control_voltage = 0.0;  // V

    // Ia/Va = K1 (1 + s Tm) / ((1 + s T1)(1 + s T2))
    TransferFunction motor_tf{Polynomial{0.0}, Polynomial{1.0}};
    // Kr / (1 + s Tr)
    TransferFunction converter_tf{Polynomial{0.0}, Polynomial{1.0}};
    // w/Ia = (Kb/Bt) / (1 + s Tm)
    TransferFunction speed_tf{Polynomial{0.0}, Polynomial{1.0}};
    // Full current loop gain with Kc = 1:
    //   (K1 Kr Hc / Tc) (1 + s Tc)(1 + s Tm) / (s (1 + s T1)(1 + s T2)(1 + s Tr))
    TransferFunction loop_gain_full{Polynomial{0.0}, Polynomial{1.0}};
    // Loop gain shape after (1 + s Tm) ~ s Tm, unit K:
    //   (1 + s Tc) / ((1 + s T1)(1 + s T2)(1 + s Tr))
    TransferFunction loop_gain_shape{Polynomial{0.0}, Polynomial{1.0}};
};

// Throws ComplexMotorPoles when the armature/mechanical quadratic has complex
// roots and TimeConstantOrdering unless Tr < T2 < T1.
[[nodiscard]] DerivedDriveModel derive_model(const MotorDriveParams& p);

// loop_gain_shape scaled by K > 0.
[[nodiscard]] TransferFunction loop_gain_with_K(const DerivedDriveModel& model, double K);

// K = K1 Kc Kr Hc Tm / Tc and its inverse.
[[nodiscard]] double loop_gain_from_kc(const DerivedDriveModel& model, double kc);
[[nodiscard]] double kc_from_K(const DerivedDriveModel& model, double K);

// Closed current loop with PI gain kc: transducer output per unit command,
// L / (1 + L) with L = kc * loop_gain_full. Unity DC gain.
[[nodiscard]] TransferFunction closed_current_loop(const DerivedDriveModel& model, double kc);

}  // namespace mordrive::drive
