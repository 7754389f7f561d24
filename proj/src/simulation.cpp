#include "mordrive/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mordrive/error.hpp"

namespace mordrive::sim {
namespace {

constexpr double kHorizonTimeConstants = 8.0;

// Controllable canonical form of a proper rational function, normalized so
// that the denominator is monic:
//   x' = A x + B u,  y = C x + D u
// with A the companion matrix and B = e_n.
struct Realization {
    std::vector<double> a;  // monic denominator coefficients a_0 .. a_{n-1}
    std::vector<double> c;  // output weights for strictly proper part
    double d = 0.0;         // direct feedthrough
};

Realization realize(const TransferFunction& g) {
    const Polynomial& den = g.den();
    const int n = den.degree();
    const double lead = den.leading();
    Realization r;
    r.d = n == g.num().degree() || n == 0 ? g.num()[n] / lead : 0.0;
    r.a.resize(static_cast<std::size_t>(n));
    r.c.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        r.a[k] = den[i] / lead;
        r.c[k] = g.num()[i] / lead - r.d * r.a[k];
    }
    return r;
}

void derivative(const Realization& r, const std::vector<double>& x, double u, std::vector<double>& dx) {
    const std::size_t n = x.size();
    double last = u;
    for (std::size_t i = 0; i < n; ++i) last -= r.a[i] * x[i];
    for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1];
    dx[n - 1] = last;
}

double output(const Realization& r, const std::vector<double>& x, double u) {
    double y = r.d * u;
    for (std::size_t i = 0; i < x.size(); ++i) y += r.c[i] * x[i];
    return y;
}

double trapezoid_squared(const std::vector<double>& t, auto&& error_at) {
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        double e0 = error_at(i - 1);
        double e1 = error_at(i);
        sum += 0.5 * (t[i] - t[i - 1]) * (e0 * e0 + e1 * e1);
    }
    return sum;
}

double crossing_time(const StepTrace& tr, double level, double final_value) {
    for (std::size_t i = 0; i < tr.y.size(); ++i) {
        double v = tr.y[i] / final_value;
        if (v >= level) {
            if (i == 0) return tr.t[0];
            double prev = tr.y[i - 1] / final_value;
            double frac = (level - prev) / (v - prev);
            return tr.t[i - 1] + frac * (tr.t[i] - tr.t[i - 1]);
        }
    }
    return tr.t.back();
}

}  // namespace

StepGrid default_step_grid(const TransferFunction& g) {
    TimeScales ts = time_scales(g.den());
    if (ts.smallest <= 0.0) return {1.0, 1e-3};
    return {kHorizonTimeConstants * ts.largest, ts.smallest / 20.0};
}

StepTrace step_response(const TransferFunction& g, double t_final, double dt, double amplitude) {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t_final) || t_final < 10.0 * dt) {
        throw Error(ErrorCode::InvalidArgument, "need dt > 0 and t_final >= 10 dt",
                    {{"t_final", t_final}, {"dt", dt}});
    }
    const double steps = std::round(t_final / dt);
    if (steps + 1.0 > static_cast<double>(kMaxSamples)) {
        throw Error(ErrorCode::InvalidArgument, "time grid too large", {{"samples", steps + 1.0}});
    }
    const auto n_samples = static_cast<std::size_t>(steps) + 1;

    StepTrace tr;
    tr.dt = dt;
    tr.input_amplitude = amplitude;
    tr.t.resize(n_samples);
    tr.y.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) tr.t[i] = static_cast<double>(i) * dt;

    const Realization r = realize(g);
    const std::size_t order = r.a.size();
    if (order == 0) {
        std::fill(tr.y.begin(), tr.y.end(), r.d * amplitude);
        return tr;
    }

    if (g.den().degree() >= 1) {
        TimeScales ts = time_scales(g.den());
        if (ts.smallest > 0.0 && dt > ts.smallest / 10.0) {
            tr.warnings.emplace_back("stiffness: dt exceeds a tenth of the smallest time constant");
        }
    }

    std::vector<double> x(order, 0.0), k1(order), k2(order), k3(order), k4(order), tmp(order);
    tr.y[0] = output(r, x, amplitude);
    for (std::size_t step = 1; step < n_samples; ++step) {
        derivative(r, x, amplitude, k1);
        for (std::size_t i = 0; i < order; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
        derivative(r, tmp, amplitude, k2);
        for (std::size_t i = 0; i < order; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
        derivative(r, tmp, amplitude, k3);
        for (std::size_t i = 0; i < order; ++i) tmp[i] = x[i] + dt * k3[i];
        derivative(r, tmp, amplitude, k4);
        for (std::size_t i = 0; i < order; ++i) {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        double y = output(r, x, amplitude);
        if (!std::isfinite(y)) {
            throw Error(ErrorCode::SimulationDiverged, "state became non-finite",
                        {{"t", tr.t[step]}});
        }
        tr.y[step] = y;
    }
    return tr;
}

StepTrace step_response(const TransferFunction& g) {
    StepGrid grid = default_step_grid(g);
    return step_response(g, grid.t_final, grid.dt);
}

std::vector<double> log_grid(double omega_min, double omega_max, int points_per_decade) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max) ||
        points_per_decade < 1) {
        throw Error(ErrorCode::InvalidArgument, "need 0 < omega_min < omega_max and points_per_decade >= 1");
    }
    const double decades = std::log10(omega_max / omega_min);
    const double count = std::round(decades * points_per_decade) + 1.0;
    if (count > static_cast<double>(kMaxSamples)) {
        throw Error(ErrorCode::InvalidArgument, "frequency grid too large", {{"points", count}});
    }
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(count));
    std::vector<double> w(n);
    const double lo = std::log10(omega_min);
    const double hi = std::log10(omega_max);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    w.front() = omega_min;
    w.back() = omega_max;
    return w;
}

BodeTrace bode(const TransferFunction& g, double omega_min, double omega_max, int points_per_decade) {
    BodeTrace out;
    out.omega = log_grid(omega_min, omega_max, points_per_decade);
    out.mag_db.reserve(out.omega.size());
    out.phase_deg.reserve(out.omega.size());
    double previous = 0.0;
    double offset = 0.0;
    for (std::size_t i = 0; i < out.omega.size(); ++i) {
        const Complex s{0.0, out.omega[i]};
        const Complex n = poly_eval(g.num(), s);
        const Complex d = poly_eval(g.den(), s);
        if (d == 0.0) {
            out.singular = true;
            out.mag_db.push_back(std::numeric_limits<double>::infinity());
            out.phase_deg.push_back(previous);
            continue;
        }
        const Complex value = n / d;
        out.mag_db.push_back(20.0 * std::log10(std::abs(value)));
        double raw = std::arg(value) * 180.0 / std::numbers::pi + offset;
        if (i > 0) {
            while (raw - previous > 180.0) { raw -= 360.0; offset -= 360.0; }
            while (raw - previous < -180.0) { raw += 360.0; offset += 360.0; }
        }
        out.phase_deg.push_back(raw);
        previous = raw;
    }
    return out;
}

double ise(const StepTrace& a, const StepTrace& b) {
    if (a.t.size() != b.t.size() || a.y.size() != a.t.size() || b.y.size() != b.t.size()) {
        throw Error(ErrorCode::GridMismatch, "traces have different lengths");
    }
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        if (std::abs(a.t[i] - b.t[i]) > 1e-12 * (1.0 + std::abs(a.t[i]))) {
            throw Error(ErrorCode::GridMismatch, "traces have different time grids", {{"t", a.t[i]}});
        }
    }
    return trapezoid_squared(a.t, [&](std::size_t i) { return a.y[i] - b.y[i]; });
}

double ise_against(const StepTrace& trace, double reference) {
    return trapezoid_squared(trace.t, [&](std::size_t i) { return trace.y[i] - reference; });
}

ResponseMetrics response_metrics(const StepTrace& tr) {
    if (tr.y.size() < 2 || tr.y.size() != tr.t.size()) {
        throw Error(ErrorCode::InvalidArgument, "trace needs at least two samples");
    }
    const std::size_t tail = std::max<std::size_t>(1, tr.y.size() / 20);
    double mean = 0.0;
    for (std::size_t i = tr.y.size() - tail; i < tr.y.size(); ++i) mean += tr.y[i];
    mean /= static_cast<double>(tail);
    const double band = 0.02 * std::abs(mean);
    bool settled = std::isfinite(mean) && mean != 0.0;
    for (std::size_t i = tr.y.size() - tail; settled && i < tr.y.size(); ++i) {
        settled = std::abs(tr.y[i] - mean) <= band;
    }
    if (!settled) {
        throw Error(ErrorCode::NotSettled, "tail of the trace is not within +/-2% of its mean",
                    {{"tail_mean", mean}});
    }

    ResponseMetrics m;
    m.final_value = mean;
    // Peaks inside the averaging window are the slow creep toward the settled
    // value, not overshoot.
    double peak = 0.0;
    for (std::size_t i = 0; i < tr.y.size() - tail; ++i) peak = std::max(peak, tr.y[i] / mean);
    m.overshoot_pct = std::max(0.0, (peak - 1.0) * 100.0);

    std::size_t last_out = tr.y.size();
    for (std::size_t i = tr.y.size(); i-- > 0;) {
        if (std::abs(tr.y[i] - mean) > band) {
            last_out = i;
            break;
        }
    }
    if (last_out == tr.y.size()) {
        m.settling_2pct = 0.0;
    } else {
        // Interpolate the re-entry into the band between last_out and the next sample.
        const double e0 = std::abs(tr.y[last_out] - mean);
        const double e1 = std::abs(tr.y[last_out + 1] - mean);
        const double frac = e0 == e1 ? 1.0 : (e0 - band) / (e0 - e1);
        m.settling_2pct = tr.t[last_out] + std::clamp(frac, 0.0, 1.0) * (tr.t[last_out + 1] - tr.t[last_out]);
    }
    m.rise_10_90 = crossing_time(tr, 0.9, mean) - crossing_time(tr, 0.1, mean);
    return m;
}

}  // namespace mordrive::sim
