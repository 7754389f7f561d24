#include "mordrive/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mordrive/error.hpp"
#include "mordrive/simulation.hpp"

namespace mordrive::mor {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kCandidateRealness = 1e-6;

// Coefficients t_1..t_q of |Nr(jw)|^2 (as a series in s^2) implied by the
// matching conditions: series division of |N Dr|^2 by |D|^2.
std::vector<double> target_series(const TransferFunction& g, const Polynomial& d_r, int q) {
    Polynomial lhs = spectral_square(g.num() * d_r);
    Polynomial den_sq = spectral_square(g.den());
    std::vector<double> t(static_cast<std::size_t>(q) + 1, 0.0);
    t[0] = 1.0;
    for (int x = 1; x <= q; ++x) {
        double v = lhs[2 * x];
        for (int k = 0; k < x; ++k) v -= den_sq[2 * (x - k)] * t[static_cast<std::size_t>(k)];
        t[static_cast<std::size_t>(x)] = v;
    }
    return t;
}

double max_residual(const TransferFunction& g, const TransferFunction& gr, const std::vector<double>& omegas) {
    double worst = 0.0;
    for (double w : omegas) {
        const Complex s{0.0, w};
        const double ratio = std::norm(g(s)) / std::norm(gr(s));
        worst = std::max(worst, std::abs(ratio - 1.0));
    }
    return worst;
}

int sign_agreement(const Polynomial& candidate, const Polynomial& reference, int q) {
    int score = 0;
    for (int i = 1; i <= q; ++i) {
        if (reference[i] == 0.0 || candidate[i] == 0.0) continue;
        if (std::signbit(reference[i]) == std::signbit(candidate[i])) ++score;
    }
    return score;
}

double refine_quartic_root(const Polynomial& quartic, double x) {
    for (int i = 0; i < 20; ++i) {
        double value = 0.0;
        double slope = 0.0;
        for (int k = quartic.degree(); k >= 0; --k) {
            slope = slope * x + value;
            value = value * x + quartic[k];
        }
        if (slope == 0.0) break;
        double next = x - value / slope;
        if (!std::isfinite(next) || std::abs(next - x) <= 1e-16 * (1.0 + std::abs(x))) break;
        x = next;
    }
    return x;
}

std::vector<Polynomial> candidates_q1(const std::vector<double>& t) {
    const double c1_sq = -t[1];
    if (c1_sq < -1e-12 * (1.0 + std::abs(t[1]))) {
        throw Error(ErrorCode::MatchInfeasible, "matching condition needs C1^2 < 0",
                    {{"c1_squared", c1_sq}});
    }
    const double c1 = std::sqrt(std::max(0.0, c1_sq));
    if (c1 == 0.0) return {Polynomial{1.0}};
    return {Polynomial{1.0, c1}, Polynomial{1.0, -c1}};
}

std::vector<Polynomial> candidates_q2(const std::vector<double>& t) {
    const double t1 = t[1];
    double t2 = t[2];
    const double scale = 1.0 + t1 * t1 + std::abs(t2);
    if (t2 < -1e-12 * scale) {
        throw Error(ErrorCode::MatchInfeasible, "matching condition needs C2^2 < 0",
                    {{"c2_squared", t2}});
    }
    t2 = std::max(0.0, t2);
    // C2 = (t1 + C1^2) / 2 and C2^2 = t2 give a quartic in C1.
    const Polynomial quartic{t1 * t1 - 4.0 * t2, 0.0, 2.0 * t1, 0.0, 1.0};
    std::vector<double> c1_values;
    if (quartic.degree() < 1) {
        c1_values.push_back(0.0);
    } else {
        for (const Complex& root : poly_roots(quartic)) {
            if (std::abs(root.imag()) > kCandidateRealness * (1.0 + std::abs(root.real()))) continue;
            c1_values.push_back(refine_quartic_root(quartic, root.real()));
        }
    }
    if (c1_values.empty()) {
        throw Error(ErrorCode::MatchInfeasible, "matching quartic has no real root",
                    {{"t1", t1}, {"t2", t2}, {"c1_squared_max", -t1 + 2.0 * std::sqrt(t2)}});
    }
    std::sort(c1_values.begin(), c1_values.end(), std::greater<>());
    std::vector<Polynomial> out;
    double last = std::numeric_limits<double>::quiet_NaN();
    for (double c1 : c1_values) {
        if (std::abs(c1 - last) <= 1e-9 * (1.0 + std::abs(c1))) continue;
        last = c1;
        const double c2 = 0.5 * (t1 + c1 * c1);
        out.push_back(Polynomial{1.0, c1, c2});
    }
    return out;
}

void require_unit_constant(const Polynomial& p, const char* what) {
    if (std::abs(p[0] - 1.0) > 1e-12) {
        throw Error(ErrorCode::NotNormalized, std::string(what) + " must have unit constant term",
                    {{"constant_term", p[0]}});
    }
}

}  // namespace

std::vector<double> FrequencyGrid::points() const {
    return sim::log_grid(omega_min, omega_max, points_per_decade);
}

Normalized normalize(const TransferFunction& g) {
    const double b0 = g.den()[0];
    const double a0 = g.num()[0];
    if (b0 == 0.0) {
        throw Error(ErrorCode::ZeroConstantTerm, "denominator constant term is zero (pole at the origin)");
    }
    if (a0 == 0.0) {
        throw Error(ErrorCode::ZeroDcGain, "numerator constant term is zero");
    }
    return {a0 / b0, g.num().scaled(1.0 / a0), g.den().scaled(1.0 / b0)};
}

Polynomial reduce_denominator(const Polynomial& den, int r) {
    if (r < 1 || r >= den.degree()) {
        throw Error(ErrorCode::BadOrder, "reduced order must satisfy 1 <= r < degree",
                    {{"order", r}, {"degree", den.degree()}});
    }
    const StabilityFactorization f = even_odd_factor(den);
    return f.recombine(static_cast<std::size_t>(r / 2), static_cast<std::size_t>((r - 1) / 2));
}

std::vector<MatchedCondition> matching_conditions(const TransferFunction& g, const Polynomial& d_r,
                                                  const Polynomial& n_r, int q) {
    const Polynomial lhs = spectral_square(g.num() * d_r);
    const Polynomial rhs = spectral_square(g.den() * n_r);
    std::vector<MatchedCondition> out;
    for (int x = 1; x <= q; ++x) out.push_back({2 * x, lhs[2 * x], rhs[2 * x]});
    return out;
}

Polynomial match_numerator(const TransferFunction& g, const Polynomial& d_r, int q,
                           const FrequencyGrid& grid) {
    require_unit_constant(g.num(), "numerator");
    require_unit_constant(g.den(), "denominator");
    require_unit_constant(d_r, "reduced denominator");
    if (q < 0 || q > d_r.degree()) {
        throw Error(ErrorCode::BadOrder, "numerator order must satisfy 0 <= q <= deg(Dr)",
                    {{"numerator_order", q}, {"reduced_degree", d_r.degree()}});
    }
    if (q == 0) return Polynomial{1.0};
    if (q > 2) {
        throw Error(ErrorCode::Unsupported, "numerator matching is implemented for q <= 2",
                    {{"numerator_order", q}});
    }

    const std::vector<double> t = target_series(g, d_r, q);
    const std::vector<Polynomial> candidates = q == 1 ? candidates_q1(t) : candidates_q2(t);
    if (candidates.size() == 1) return candidates.front();

    const std::vector<double> omegas = grid.points();
    std::size_t best = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    int best_signs = -1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double res = max_residual(g, TransferFunction(candidates[i], d_r), omegas);
        const int signs = sign_agreement(candidates[i], g.num(), q);
        const bool tie = std::abs(res - best_residual) <= kTieTolerance * std::max(1.0, best_residual);
        if ((!tie && res < best_residual) || (tie && signs > best_signs)) {
            best = i;
            best_residual = res;
            best_signs = signs;
        }
    }
    return candidates[best];
}

Polynomial adjust_denominator(const Polynomial& d_r, double n_percent) {
    if (d_r.degree() < 2) {
        throw Error(ErrorCode::BadOrder, "percentage adjustment needs degree >= 2", {{"degree", d_r.degree()}});
    }
    if (!(n_percent > 0.0) || n_percent > 15.0) {
        throw Error(ErrorCode::InvalidArgument, "adjustment percentage must lie in (0, 15]",
                    {{"percent", n_percent}});
    }
    std::vector<double> c = d_r.vec();
    c[1] *= 1.0 + n_percent / 100.0;
    c[2] *= 1.0 - n_percent / 100.0;
    return Polynomial(std::move(c));
}

ResidualSummary magnitude_residual(const TransferFunction& g, const TransferFunction& reduced,
                                   const FrequencyGrid& grid) {
    ResidualSummary out;
    out.grid = grid;
    const std::vector<double> omegas = grid.points();
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const Complex s{0.0, omegas[i]};
        const double eps = std::abs(std::norm(g(s)) / std::norm(reduced(s)) - 1.0);
        if (i == 0) out.at_lowest = eps;
        if (eps > out.max_abs || i == 0) {
            out.max_abs = eps;
            out.omega_at_max = omegas[i];
        }
    }
    return out;
}

ReductionResult reduce(const TransferFunction& g, const ReductionConfig& cfg) {
    const int n = g.den().degree();
    const int r = cfg.target_order;
    const int q = cfg.q();
    if (r < 1 || r > n) {
        throw Error(ErrorCode::BadOrder, "target order must satisfy 1 <= r <= deg(den)",
                    {{"order", r}, {"degree", n}});
    }
    const bool identity = r == n && q == g.num().degree();
    if (q < 0 || (q >= r && !identity)) {
        throw Error(ErrorCode::BadOrder, "numerator order must satisfy 0 <= q < r",
                    {{"numerator_order", q}, {"order", r}});
    }
    if (cfg.adjust.kind != AdjustMode::Kind::None && r < 2) {
        throw Error(ErrorCode::BadOrder, "percentage adjustment needs r >= 2", {{"order", r}});
    }

    const Normalized norm = normalize(g);
    const TransferFunction shape(norm.num, norm.den);
    StabilityFactorization factors = even_odd_factor(norm.den);

    Polynomial d_r = r == n ? norm.den
                            : factors.recombine(static_cast<std::size_t>(r / 2),
                                                static_cast<std::size_t>((r - 1) / 2));
    Polynomial n_r = identity ? norm.num : match_numerator(shape, d_r, q, cfg.residual_grid);

    ReductionResult result{
        .reduced = TransferFunction(n_r.scaled(norm.gain), d_r),
        .gain = norm.gain,
        .factorization = std::move(factors),
        .unadjusted_den = d_r,
        .matched_conditions = matching_conditions(shape, d_r, n_r, q),
        .residual = {},
        .chosen_n = std::nullopt,
        .auto_scores = {},
        .warnings = {},
    };

    switch (cfg.adjust.kind) {
        case AdjustMode::Kind::None:
            break;
        case AdjustMode::Kind::Fixed:
            result.reduced = TransferFunction(n_r.scaled(norm.gain), adjust_denominator(d_r, cfg.adjust.percent));
            result.chosen_n = cfg.adjust.percent;
            break;
        case AdjustMode::Kind::Auto: {
            const PercentGrid& pg = cfg.auto_grid;
            if (!(pg.from >= 1.0) || !(pg.to <= 15.0) || !(pg.from <= pg.to) || !(pg.step > 0.0)) {
                throw Error(ErrorCode::InvalidArgument, "auto grid must lie within [1, 15] with a positive step");
            }
            const sim::StepGrid base = sim::default_step_grid(g);
            const double horizon = cfg.ise_horizon.value_or(5.0 * time_scales(g.den()).largest);
            const sim::StepTrace reference = sim::step_response(g, horizon, base.dt);
            std::optional<double> best_ise;
            const auto count = static_cast<int>(std::floor((pg.to - pg.from) / pg.step + 1e-9));
            for (int i = 0; i <= count; ++i) {
                const double pct = pg.from + pg.step * i;
                AutoScore score{pct, std::nullopt};
                try {
                    const Polynomial adjusted = adjust_denominator(d_r, pct);
                    if (is_stable(adjusted)) {
                        const TransferFunction candidate(n_r.scaled(norm.gain), adjusted);
                        score.ise = sim::ise(reference, sim::step_response(candidate, horizon, base.dt));
                    }
                } catch (const Error&) {
                }
                if (score.ise && (!best_ise || *score.ise < *best_ise)) {
                    best_ise = score.ise;
                    result.chosen_n = pct;
                }
                result.auto_scores.push_back(score);
            }
            if (result.chosen_n) {
                result.reduced = TransferFunction(n_r.scaled(norm.gain), adjust_denominator(d_r, *result.chosen_n));
            } else {
                result.warnings.emplace_back("auto adjustment: no percentage produced a usable model; left unadjusted");
            }
            break;
        }
    }

    result.residual = magnitude_residual(g, result.reduced, cfg.residual_grid);
    return result;
}

}  // namespace mordrive::mor
