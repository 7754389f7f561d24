#include "mordrive/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <openssl/evp.h>

#include "mordrive/error.hpp"

namespace mordrive::io {
namespace {

struct MotorField {
    const char* key;
    double drive::MotorDriveParams::*member;
};

constexpr std::array kRequiredMotorFields{
    MotorField{"rated_voltage_v", &drive::MotorDriveParams::rated_voltage},
    MotorField{"rated_current_a", &drive::MotorDriveParams::rated_current},
    MotorField{"ra_ohm", &drive::MotorDriveParams::ra},
    MotorField{"la_h", &drive::MotorDriveParams::la},
    MotorField{"j_kgm2", &drive::MotorDriveParams::j},
    MotorField{"bt_nm_per_rad_s", &drive::MotorDriveParams::bt},
    MotorField{"kb_v_per_rad_s", &drive::MotorDriveParams::kb},
    MotorField{"supply_line_voltage_v", &drive::MotorDriveParams::supply_line_voltage},
    MotorField{"vcm_v", &drive::MotorDriveParams::vcm},
    MotorField{"imax_a", &drive::MotorDriveParams::imax},
    MotorField{"tc_s", &drive::MotorDriveParams::tc},
};

double number_at(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
    }
    if (!it->is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a number");
    }
    return it->get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return number_at(j, key);
}

Polynomial polynomial_at(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
    }
    if (!it->is_array() || it->empty()) {
        throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a non-empty array");
    }
    std::vector<double> c;
    c.reserve(it->size());
    for (const json& v : *it) {
        if (!v.is_number()) {
            throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must hold numbers");
        }
        c.push_back(v.get<double>());
    }
    return Polynomial(std::move(c));
}

json poly_json(const Polynomial& p) { return json(p.vec()); }

json complex_list(const std::vector<Complex>& values) {
    json out = json::array();
    for (const Complex& v : values) out.push_back({v.real(), v.imag()});
    return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) return "nan";
    return {buf.data(), ptr};
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::InvalidArgument, "sha256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 0xF]);
    }
    return out;
}

TransferFunction tf_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "transfer function file must hold an object");
    return {polynomial_at(j, "num"), polynomial_at(j, "den")};
}

json tf_to_json(const TransferFunction& g) { return {{"num", poly_json(g.num())}, {"den", poly_json(g.den())}}; }

drive::MotorDriveParams motor_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "motor file must hold an object");
    drive::MotorDriveParams p;
    for (const MotorField& f : kRequiredMotorFields) p.*(f.member) = number_at(j, f.key);
    p.tr = optional_number(j, "tr_s").value_or(p.tr);
    p.zeta = optional_number(j, "zeta").value_or(p.zeta);
    p.rated_speed_rpm = optional_number(j, "rated_speed_rpm");
    p.tacho_gain = optional_number(j, "tacho_gain_v_per_rad_s");
    p.tacho_time_constant = optional_number(j, "tacho_time_constant_s");
    drive::validate(p);
    return p;
}

json motor_to_json(const drive::MotorDriveParams& p) {
    json j;
    for (const MotorField& f : kRequiredMotorFields) j[f.key] = p.*(f.member);
    j["tr_s"] = p.tr;
    j["zeta"] = p.zeta;
    j["rated_speed_rpm"] = optional_json(p.rated_speed_rpm);
    j["tacho_gain_v_per_rad_s"] = optional_json(p.tacho_gain);
    j["tacho_time_constant_s"] = optional_json(p.tacho_time_constant);
    return j;
}

json to_json(const StabilityFactorization& f) {
    return {{"e0", f.e0}, {"e1", f.e1}, {"z_sq", f.z_sq}, {"p_sq", f.p_sq}};
}

json to_json(const mor::ReductionResult& r) {
    json conditions = json::array();
    for (const auto& c : r.matched_conditions) {
        conditions.push_back({{"power", c.power}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    }
    json scores = json::array();
    for (const auto& s : r.auto_scores) scores.push_back({{"percent", s.percent}, {"ise", optional_json(s.ise)}});
    return {
        {"num", poly_json(r.reduced.num())},
        {"den", poly_json(r.reduced.den())},
        {"gain", r.gain},
        {"factorization", to_json(r.factorization)},
        {"unadjusted_den", poly_json(r.unadjusted_den)},
        {"matched_conditions", conditions},
        {"residual",
         {{"max_abs", r.residual.max_abs},
          {"omega_at_max", r.residual.omega_at_max},
          {"at_lowest", r.residual.at_lowest},
          {"omega_min", r.residual.grid.omega_min},
          {"omega_max", r.residual.grid.omega_max},
          {"points_per_decade", r.residual.grid.points_per_decade}}},
        {"chosen_n", optional_json(r.chosen_n)},
        {"auto_scores", scores},
        {"warnings", r.warnings},
    };
}

json to_json(const drive::DerivedDriveModel& m) {
    return {
        {"k1", m.k1},
        {"t1_s", m.t1},
        {"t2_s", m.t2},
        {"tm_s", m.tm},
        {"kr", m.kr},
        {"hc_v_per_a", m.hc},
        {"rated_control_voltage_v", m.rated_control_voltage},
        {"loop_gain_shape", tf_to_json(m.loop_gain_shape)},
        {"loop_gain_full_unit_kc", tf_to_json(m.loop_gain_full)},
    };
}

json to_json(const design::DesignReport& r) {
    json j{
        {"method", design::to_string(r.method)},
        {"K", r.K},
        {"kc", r.kc},
        {"tc_s", r.tc},
        {"closed_loop_poles", complex_list(r.closed_loop_poles)},
        {"achieved_zeta", r.achieved_zeta},
        {"natural_frequency_rad_per_s", r.natural_frequency},
        {"warnings", r.warnings},
    };
    j["reduced_model"] = r.reduced_model ? to_json(*r.reduced_model) : json(nullptr);
    return j;
}

std::string step_csv(const sim::StepTrace& tr) {
    std::ostringstream os;
    os << "t_s,y\n";
    for (std::size_t i = 0; i < tr.t.size(); ++i) os << format_double(tr.t[i]) << ',' << format_double(tr.y[i]) << '\n';
    return os.str();
}

std::string bode_csv(const sim::BodeTrace& tr) {
    std::ostringstream os;
    os << "omega_rad_per_s,mag_db,phase_deg\n";
    for (std::size_t i = 0; i < tr.omega.size(); ++i) {
        os << format_double(tr.omega[i]) << ',' << format_double(tr.mag_db[i]) << ','
           << format_double(tr.phase_deg[i]) << '\n';
    }
    return os.str();
}

std::string sweep_csv(const std::vector<design::SweepPoint>& points) {
    std::ostringstream os;
    os << "kc,overshoot_pct,settling_s,rise_s,ise,stable\n";
    for (const auto& p : points) {
        os << format_double(p.kc) << ',' << optional_cell(p.overshoot_pct) << ',' << optional_cell(p.settling_2pct)
           << ',' << optional_cell(p.rise_10_90) << ',' << optional_cell(p.ise_vs_reference) << ','
           << (p.stable ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace mordrive::io
