#include "mordrive/drive_model.hpp"

#include <cmath>
#include <string>

#include "mordrive/error.hpp"

namespace mordrive::drive {
namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, std::string(field) + " must be a positive finite number",
                    {{field, value}});
    }
}

Polynomial lag(double tau) { return Polynomial{1.0, tau}; }

}  // namespace

MotorDriveParams reference_drive() {
    MotorDriveParams p;
    p.rated_voltage = 220.0;
    p.rated_current = 8.3;
    p.ra = 4.0;
    p.la = 0.072;
    p.j = 0.0607;
    p.bt = 0.0869;
    p.kb = 1.26;
    p.supply_line_voltage = 230.0;
    p.vcm = 10.0;
    p.imax = 20.0;
    p.tr = 0.00138;
    p.tc = 0.03;
    p.zeta = 0.707;
    p.rated_speed_rpm = 1470.0;
    p.tacho_gain = 0.065;
    p.tacho_time_constant = 0.002;
    return p;
}

void validate(const MotorDriveParams& p) {
    require_positive(p.rated_voltage, "rated_voltage");
    require_positive(p.rated_current, "rated_current");
    require_positive(p.ra, "ra");
    require_positive(p.la, "la");
    require_positive(p.j, "j");
    require_positive(p.bt, "bt");
    require_positive(p.kb, "kb");
    require_positive(p.supply_line_voltage, "supply_line_voltage");
    require_positive(p.vcm, "vcm");
    require_positive(p.imax, "imax");
    require_positive(p.tr, "tr");
    require_positive(p.tc, "tc");
    if (!(p.zeta > 0.0 && p.zeta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "zeta must lie in (0, 1]", {{"zeta", p.zeta}});
    }
}

DerivedDriveModel derive_model(const MotorDriveParams& p) {
    validate(p);
    DerivedDriveModel m;
    m.params = p;

    const double electrical = p.kb * p.kb + p.ra * p.bt;
    m.k1 = p.bt / electrical;

    // J La s^2 + (Bt La + J Ra) s + (Kb^2 + Ra Bt): real roots give T1, T2.
    const double a = p.j * p.la;
    const double b = p.bt * p.la + p.j * p.ra;
    const double c = electrical;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw Error(ErrorCode::ComplexMotorPoles, "motor electrical poles are complex", {{"discriminant", disc}});
    }
    const double sq = std::sqrt(disc);
    // Numerically stable pair of roots, both negative.
    const double qv = -0.5 * (b + sq);
    const double slow = std::abs(c / qv);
    const double fast = std::abs(qv / a);
    m.t1 = 1.0 / slow;
    m.t2 = 1.0 / fast;
    m.tm = p.j / p.bt;

    m.kr = 1.35 * p.supply_line_voltage / p.vcm;
    m.rated_control_voltage = p.rated_voltage / m.kr;
    m.hc = m.rated_control_voltage / p.imax;

    if (!(p.tr < m.t2 && m.t2 < m.t1)) {
        throw Error(ErrorCode::TimeConstantOrdering, "time constants must satisfy Tr < T2 < T1",
                    {{"tr", p.tr}, {"t2", m.t2}, {"t1", m.t1}});
    }

    const Polynomial motor_den = lag(m.t1) * lag(m.t2);
    m.motor_tf = TransferFunction(lag(m.tm).scaled(m.k1), motor_den);
    m.converter_tf = TransferFunction(Polynomial{m.kr}, lag(p.tr));
    m.speed_tf = TransferFunction(Polynomial{p.kb / p.bt}, lag(m.tm));

    const Polynomial plant_den = motor_den * lag(p.tr);
    const double full_gain = m.k1 * m.kr * m.hc / p.tc;
    m.loop_gain_full = TransferFunction((lag(p.tc) * lag(m.tm)).scaled(full_gain),
                                        Polynomial{0.0, 1.0} * plant_den);
    m.loop_gain_shape = TransferFunction(lag(p.tc), plant_den);
    return m;
}

TransferFunction loop_gain_with_K(const DerivedDriveModel& model, double K) {
    if (!(K > 0.0) || !std::isfinite(K)) {
        throw Error(ErrorCode::InvalidArgument, "loop gain K must be positive", {{"K", K}});
    }
    return model.loop_gain_shape.scaled(K);
}

double loop_gain_from_kc(const DerivedDriveModel& model, double kc) {
    return model.k1 * kc * model.kr * model.hc * model.tm / model.params.tc;
}

double kc_from_K(const DerivedDriveModel& model, double K) {
    return K * model.params.tc / (model.k1 * model.hc * model.kr * model.tm);
}

TransferFunction closed_current_loop(const DerivedDriveModel& model, double kc) {
    return close_loop(model.loop_gain_full.scaled(kc), TransferFunction(Polynomial{1.0}, Polynomial{1.0}));
}

}  // namespace mordrive::drive
