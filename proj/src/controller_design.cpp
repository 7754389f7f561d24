#include "mordrive/controller_design.hpp"

#include <algorithm>
#include <cmath>

#include "mordrive/error.hpp"
#include "mordrive/simulation.hpp"

namespace mordrive::design {
namespace {

constexpr std::size_t kSweepSampleBudget = 2'000'000;

DesignReport finish_report(Method method, double K, const drive::DerivedDriveModel& model,
                           const Polynomial& closed_den) {
    DesignReport r;
    r.method = method;
    r.K = K;
    r.kc = drive::kc_from_K(model, K);
    r.tc = model.params.tc;
    r.closed_loop_poles = poly_roots(closed_den);
    std::sort(r.closed_loop_poles.begin(), r.closed_loop_poles.end(),
              [](const Complex& a, const Complex& b) {
                  return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
              });
    const Damping d = dominant_damping(r.closed_loop_poles);
    r.achieved_zeta = d.zeta;
    r.natural_frequency = d.omega_n;
    if (std::any_of(r.closed_loop_poles.begin(), r.closed_loop_poles.end(),
                    [](const Complex& p) { return p.real() >= 0.0; })) {
        r.warnings.emplace_back("closed loop has poles outside the open left half-plane");
    }
    return r;
}

}  // namespace

const char* to_string(Method m) noexcept {
    return m == Method::Conventional ? "conventional" : "mor";
}

Damping dominant_damping(const std::vector<Complex>& poles) {
    if (poles.empty()) return {};
    std::vector<Complex> sorted = poles;
    std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
        return std::abs(a.real()) < std::abs(b.real());
    });
    const Complex slowest = sorted.front();
    if (std::abs(slowest.imag()) > 1e-9 * std::abs(slowest)) {
        return {-slowest.real() / std::abs(slowest), std::abs(slowest)};
    }
    std::vector<double> real;
    for (const Complex& p : sorted) {
        if (std::abs(p.imag()) <= 1e-9 * std::abs(p)) real.push_back(p.real());
    }
    if (real.size() < 2) return {1.0, std::abs(slowest)};
    const double wn = std::sqrt(real[0] * real[1]);
    return {-(real[0] + real[1]) / (2.0 * wn), wn};
}

double gain_for_damping(const Polynomial& d, double c1, double zeta) {
    if (d.degree() != 2) {
        throw Error(ErrorCode::BadOrder, "damping match needs a second-order denominator", {{"degree", d.degree()}});
    }
    const double d0 = d[0];
    const double d1 = d[1];
    const double d2 = d[2];
    const double z2 = 4.0 * zeta * zeta;
    // (d1 + K c1)^2 = 4 zeta^2 d2 (d0 + K)  ->  a K^2 + b K + c = 0
    const double a = c1 * c1;
    const double b = 2.0 * d1 * c1 - z2 * d2;
    const double c = d1 * d1 - z2 * d2 * d0;

    auto damping_sign_ok = [&](double K) { return d1 + K * c1 > 0.0; };

    if (a == 0.0) {
        if (b == 0.0) {
            throw Error(ErrorCode::NoRealGain, "damping condition does not depend on K", {{"c", c}});
        }
        const double K = -c / b;
        if (!(K > 0.0) || !damping_sign_ok(K)) {
            throw Error(ErrorCode::NoPositiveGain, "damping condition needs K <= 0", {{"K", K}});
        }
        return K;
    }

    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw Error(ErrorCode::NoRealGain, "damping condition has no real gain",
                    {{"discriminant", disc}, {"a", a}, {"b", b}, {"c", c}});
    }
    const double sq = std::sqrt(disc);
    const double qv = -0.5 * (b + std::copysign(sq, b));
    double r1 = qv / a;
    double r2 = qv != 0.0 ? c / qv : r1;
    if (r1 > r2) std::swap(r1, r2);
    for (double K : {r1, r2}) {
        if (K > 0.0 && damping_sign_ok(K)) return K;
    }
    throw Error(ErrorCode::NoRealGain, "damping condition has no positive gain",
                {{"discriminant", disc}, {"root_1", r1}, {"root_2", r2}});
}

DesignReport design_conventional(const drive::DerivedDriveModel& model) {
    const double t1 = model.t1;
    const double tr = model.params.tr;
    const Polynomial char_shape{1.0, t1 + tr, t1 * tr};
    const double K = gain_for_damping(char_shape, 0.0, model.params.zeta);
    return finish_report(Method::Conventional, K, model, char_shape + Polynomial{K});
}

DesignReport design_via_mor(const drive::DerivedDriveModel& model, const mor::ReductionConfig& cfg) {
    if (cfg.target_order != 2) {
        throw Error(ErrorCode::BadOrder, "controller design reduces to second order", {{"order", cfg.target_order}});
    }
    mor::ReductionResult reduced = mor::reduce(model.loop_gain_shape, cfg);
    const Polynomial& num = reduced.reduced.num();
    const Polynomial& den = reduced.reduced.den();
    const double c1 = num[1] / num[0];
    const double K = gain_for_damping(den, c1, model.params.zeta);
    DesignReport r = finish_report(Method::Mor, K, model, den + num.scaled(K / num[0]));
    r.warnings.insert(r.warnings.end(), reduced.warnings.begin(), reduced.warnings.end());
    r.reduced_model = std::move(reduced);
    return r;
}

SweepPoint evaluate_gain(const drive::DerivedDriveModel& model, double kc) {
    SweepPoint pt;
    pt.kc = kc;
    try {
        const TransferFunction closed = drive::closed_current_loop(model, kc);
        const std::vector<Complex> poles = poly_roots(closed.den());
        pt.stable = is_stable(closed.den());
        if (!pt.stable) return pt;

        double slowest = std::abs(poles.front().real());
        double fastest = 0.0;
        for (const Complex& p : poles) {
            slowest = std::min(slowest, std::abs(p.real()));
            fastest = std::max(fastest, std::abs(p));
        }
        const double t_final = 5.0 / slowest;
        const double dt = std::max(1.0 / (20.0 * fastest), t_final / static_cast<double>(kSweepSampleBudget));
        const sim::StepTrace trace = sim::step_response(closed, t_final, dt);
        const sim::ResponseMetrics m = sim::response_metrics(trace);
        pt.overshoot_pct = m.overshoot_pct;
        pt.settling_2pct = m.settling_2pct;
        pt.rise_10_90 = m.rise_10_90;
        pt.ise_vs_reference = sim::ise_against(trace, 1.0);
    } catch (const Error& e) {
        pt.error = e.what();
    }
    return pt;
}

std::vector<SweepPoint> sweep_gain(const drive::DerivedDriveModel& model, double kc_min, double kc_max,
                                   int steps) {
    if (!(kc_min > 0.0) || !(kc_max > kc_min) || !std::isfinite(kc_max) || steps < 2 || steps > kMaxSweepSteps) {
        throw Error(ErrorCode::InvalidArgument, "sweep needs 0 < kc_min < kc_max and steps >= 2",
                    {{"kc_min", kc_min}, {"kc_max", kc_max}, {"steps", steps}});
    }
    std::vector<SweepPoint> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double kc = kc_min + (kc_max - kc_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        out.push_back(evaluate_gain(model, kc));
    }
    return out;
}

}  // namespace mordrive::design
