#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mordrive/polynomial.hpp"
#include "mordrive/transfer_function.hpp"

namespace mordrive::mor {

// Final denominator tweak: the s coefficient grows by n percent and the s^2
// coefficient shrinks by the same percentage.
struct AdjustMode {
    enum class Kind { None, Fixed, Auto };
    Kind kind = Kind::None;
    double percent = 0.0;

    static AdjustMode none() { return {}; }
    static AdjustMode fixed(double n) { return {Kind::Fixed, n}; }
    static AdjustMode automatic() { return {Kind::Auto, 0.0}; }
};

struct PercentGrid {
    double from = 1.0;
    double to = 15.0;
    double step = 0.5;
};

struct FrequencyGrid {
    double omega_min = 1e-1;
    double omega_max = 1e4;
    int points_per_decade = 60;

    [[nodiscard]] std::vector<double> points() const;
};

struct ReductionConfig {
    int target_order = 2;
    std::optional<int> numerator_order;  // defaults to target_order - 1
    AdjustMode adjust;
    PercentGrid auto_grid;
    std::optional<double> ise_horizon;   // defaults to 5x the slowest time constant
    FrequencyGrid residual_grid;

    [[nodiscard]] int q() const { return numerator_order.value_or(target_order - 1); }
};

// One imposed magnitude-matching condition: the s^(2x) coefficients of the
// two spectral squares, recomputed after solving.
struct MatchedCondition {
    int power = 0;
    double lhs = 0.0;  // from N(s) * Dr(s)
    double rhs = 0.0;  // from D(s) * Nr(s)
};

// Summary of eps(w) = |G(jw)|^2 / |Gr(jw)|^2 - 1 over a log grid.
struct ResidualSummary {
    double max_abs = 0.0;
    double omega_at_max = 0.0;
    double at_lowest = 0.0;
    FrequencyGrid grid;
};

struct AutoScore {
    double percent = 0.0;
    std::optional<double> ise;  // absent when the adjusted model is unusable
};

struct ReductionResult {
    TransferFunction reduced;
    double gain = 0.0;  // shared DC gain K = a0 / b0
    StabilityFactorization factorization;
    Polynomial unadjusted_den;  // normalized Dr before the percentage tweak
    std::vector<MatchedCondition> matched_conditions;
    ResidualSummary residual;
    std::optional<double> chosen_n;
    std::vector<AutoScore> auto_scores;
    std::vector<std::string> warnings;
};

// g scaled so that numerator and denominator both have unit constant term.
struct Normalized {
    double gain = 0.0;
    Polynomial num;
    Polynomial den;
};
[[nodiscard]] Normalized normalize(const TransferFunction& g);

// Keeps the floor(r/2) lowest z factors and floor((r-1)/2) lowest p factors of
// the stability-equation factorization and recombines them.
[[nodiscard]] Polynomial reduce_denominator(const Polynomial& den, int r);

// Numerator 1 + C1 s + ... + Cq s^q of the reduced model, imposing equality of
// the s^2 .. s^(2q) coefficients of |N Dr|^2 and |D Nr|^2. g and d_r must have
// unit constant terms. Among multiple real solutions, the one with the
// smallest magnitude residual on `grid` wins.
[[nodiscard]] Polynomial match_numerator(const TransferFunction& g, const Polynomial& d_r, int q,
                                         const FrequencyGrid& grid = {});

// Recomputes the matched coefficient pairs for a candidate numerator.
[[nodiscard]] std::vector<MatchedCondition> matching_conditions(const TransferFunction& g,
                                                                const Polynomial& d_r,
                                                                const Polynomial& n_r, int q);

[[nodiscard]] Polynomial adjust_denominator(const Polynomial& d_r, double n_percent);

[[nodiscard]] ResidualSummary magnitude_residual(const TransferFunction& g,
                                                 const TransferFunction& reduced,
                                                 const FrequencyGrid& grid);

[[nodiscard]] ReductionResult reduce(const TransferFunction& g, const ReductionConfig& cfg);

}  // namespace mordrive::mor
