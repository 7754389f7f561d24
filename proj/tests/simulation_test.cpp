#include "mordrive/simulation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mordrive/error.hpp"
#include "test_support.hpp"

namespace mordrive::sim {
namespace {

using mordrive::testing::random_stable_roots;

const TransferFunction kFirstOrder{Polynomial{1.0}, Polynomial{1.0, 1.0}};

double OvershootFromDamping(double zeta) {
    return 100.0 * std::exp(-std::numbers::pi * zeta / std::sqrt(1.0 - zeta * zeta));
}

ErrorCode CodeOf(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

TEST(StepResponse, FirstOrderAnalytic) {
    const StepTrace tr = step_response(kFirstOrder, 1.0, 1e-3);
    ASSERT_EQ(tr.t.size(), 1001U);
    EXPECT_DOUBLE_EQ(tr.t.front(), 0.0);
    EXPECT_NEAR(tr.t.back(), 1.0, 1e-12);
    EXPECT_NEAR(tr.y.back(), 1.0 - std::exp(-1.0), 1e-6);
    for (std::size_t i = 1; i < tr.t.size(); ++i) ASSERT_NEAR(tr.t[i] - tr.t[i - 1], 1e-3, 1e-12);
}

TEST(StepResponse, PureGain) {
    const StepTrace tr = step_response(TransferFunction{Polynomial{2.0}, Polynomial{1.0}}, 1.0, 0.01);
    for (double y : tr.y) EXPECT_EQ(y, 2.0);
}

TEST(StepResponse, BiproperFeedthrough) {
    // (2 + 3s) / (1 + s): y(0+) = 3, y(inf) = 2, y(t) = 2 + e^{-t}.
    const StepTrace tr = step_response(TransferFunction{Polynomial{2.0, 3.0}, Polynomial{1.0, 1.0}}, 2.0, 1e-3);
    EXPECT_NEAR(tr.y.front(), 3.0, 1e-12);
    EXPECT_NEAR(tr.y.back(), 2.0 + std::exp(-2.0), 1e-9);
}

TEST(StepResponse, ReducedLoopDenominatorIsOverdamped) {
    // Roots of 1 + 0.12988 s + 0.00241749 s^2 are real (zeta = 1.3208), so the
    // damping/overshoot oracle predicts no overshoot.
    const Polynomial d{1.0, 0.12988, 0.00241749};
    const double zeta = d[1] / (2.0 * std::sqrt(d[2] * d[0]));
    EXPECT_NEAR(zeta, 1.3207783491533838, 1e-12);
    const TransferFunction g{Polynomial{1.0}, d};
    const StepTrace tr = step_response(g);
    const ResponseMetrics m = response_metrics(tr);
    EXPECT_NEAR(m.final_value, 1.0, 0.005);
    EXPECT_EQ(m.overshoot_pct, 0.0);
}

TEST(StepResponse, UnderdampedOvershootMatchesDampingFormula) {
    for (double zeta : {0.3, 0.5, 0.707}) {
        const double wn = 50.0;
        const TransferFunction g{Polynomial{1.0}, Polynomial{1.0, 2.0 * zeta / wn, 1.0 / (wn * wn)}};
        const ResponseMetrics m = response_metrics(step_response(g, 2.0, 1e-4));
        EXPECT_NEAR(m.overshoot_pct, OvershootFromDamping(zeta), 0.01 * OvershootFromDamping(zeta)) << zeta;
    }
}

TEST(StepResponse, StiffnessWarningAndBadGrid) {
    const StepTrace tr = step_response(kFirstOrder, 10.0, 0.5);
    EXPECT_FALSE(tr.warnings.empty());
    EXPECT_TRUE(step_response(kFirstOrder, 10.0, 0.01).warnings.empty());
    EXPECT_EQ(CodeOf([] { (void)step_response(kFirstOrder, 1.0, 0.2); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(CodeOf([] { (void)step_response(kFirstOrder, 1.0, -1.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(CodeOf([] { (void)step_response(kFirstOrder, 1e6, 1e-6); }), ErrorCode::InvalidArgument);
}

TEST(StepResponse, DivergenceIsReported) {
    const TransferFunction unstable{Polynomial{1.0}, Polynomial{-1.0, 1e-3}};
    EXPECT_EQ(CodeOf([&] { (void)step_response(unstable, 1.0, 1e-4); }), ErrorCode::SimulationDiverged);
}

TEST(StepResponse, FinalValueEqualsDcGainProperty) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> gain(-5.0, 5.0);
    for (int trial = 0; trial < 60; ++trial) {
        const auto roots = random_stable_roots(rng, 1 + trial % 5, 0.5, 200.0);
        const Polynomial den = testing::unit_constant_from_roots(roots);
        const Polynomial num{gain(rng), 0.01 * gain(rng)};
        const TransferFunction g{num, den};
        // "Once settled": clustered slow poles need more than the default horizon.
        const StepGrid grid = default_step_grid(g);
        const StepTrace tr = step_response(g, 3.0 * grid.t_final, grid.dt);
        EXPECT_NEAR(tr.y.back(), dc_gain(g), 0.005 * std::abs(dc_gain(g))) << "trial " << trial;
    }
}

TEST(StepResponse, LinearityProperty) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial den = testing::unit_constant_from_roots(random_stable_roots(rng, 3, 1.0, 50.0));
        const TransferFunction g{Polynomial{1.0, 0.02}, den};
        const double alpha = 0.5 + trial;
        const StepTrace a = step_response(g, 2.0, 1e-3);
        const StepTrace b = step_response(g.scaled(alpha), 2.0, 1e-3);
        for (std::size_t i = 0; i < a.y.size(); ++i) {
            ASSERT_NEAR(b.y[i], alpha * a.y[i], 1e-12 * std::max(1.0, std::abs(alpha * a.y[i])));
        }
    }
}

TEST(Bode, FirstOrderCorner) {
    const BodeTrace b = bode(kFirstOrder, 0.1, 10.0, 10);
    ASSERT_EQ(b.omega.size(), 21U);
    EXPECT_NEAR(b.omega[10], 1.0, 1e-12);
    EXPECT_NEAR(b.mag_db[10], -3.0103, 0.01);
    EXPECT_NEAR(b.phase_deg[10], -45.0, 0.01);
}

TEST(Bode, ConstantGainIsFlat) {
    const BodeTrace b = bode(TransferFunction{Polynomial{2.0}, Polynomial{1.0}}, 0.1, 1000.0, 5);
    for (std::size_t i = 0; i < b.omega.size(); ++i) {
        EXPECT_NEAR(b.mag_db[i], 20.0 * std::log10(2.0), 1e-12);
        EXPECT_EQ(b.phase_deg[i], 0.0);
    }
}

TEST(Bode, PhaseIsUnwrapped) {
    Polynomial den{1.0};
    for (int i = 0; i < 6; ++i) den = den * Polynomial{1.0, 1.0};
    const BodeTrace b = bode(TransferFunction{Polynomial{1.0}, den}, 0.01, 1000.0, 40);
    for (std::size_t i = 1; i < b.phase_deg.size(); ++i) {
        ASSERT_LT(std::abs(b.phase_deg[i] - b.phase_deg[i - 1]), 180.0);
        ASSERT_LT(b.omega[i - 1], b.omega[i]);
    }
    EXPECT_NEAR(b.phase_deg.back(), -540.0, 1.0);
}

TEST(Bode, PoleOnAxisIsFlagged) {
    const BodeTrace b = bode(TransferFunction{Polynomial{1.0}, Polynomial{1.0, 0.0, 1.0}}, 0.1, 10.0, 10);
    EXPECT_TRUE(b.singular);
    EXPECT_TRUE(std::isinf(b.mag_db[10]));
}

TEST(Bode, LowFrequencyApproachesDcGainProperty) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto roots = random_stable_roots(rng, 1 + trial % 6, 0.5, 500.0);
        double slowest = 1e300;
        for (const auto& r : roots) slowest = std::min(slowest, std::abs(r));
        const TransferFunction g{Polynomial{3.0, 0.1}, testing::unit_constant_from_roots(roots)};
        const BodeTrace b = bode(g, slowest / 100.0, slowest * 10.0, 10);
        EXPECT_NEAR(b.mag_db.front(), 20.0 * std::log10(dc_gain(g)), 0.05);
    }
}

TEST(Ise, IdenticalTracesGiveZero) {
    const StepTrace tr = step_response(kFirstOrder, 5.0, 1e-3);
    EXPECT_EQ(ise(tr, tr), 0.0);
}

TEST(Ise, AnalyticFirstOrderPair) {
    // integral of (e^{-t/2} - e^{-t})^2 over [0, inf) = 1 - 4/3 + 1/2 = 1/6
    const StepTrace a = step_response(kFirstOrder, 40.0, 1e-3);
    const StepTrace b = step_response(TransferFunction{Polynomial{1.0}, Polynomial{1.0, 2.0}}, 40.0, 1e-3);
    EXPECT_NEAR(ise(a, b), 1.0 / 6.0, 1e-3);
    EXPECT_EQ(ise(a, b), ise(b, a));
}

TEST(Ise, GridMismatch) {
    const StepTrace a = step_response(kFirstOrder, 1.0, 1e-3);
    const StepTrace b = step_response(kFirstOrder, 1.0, 2e-3);
    const StepTrace c = step_response(kFirstOrder, 2.0, 2e-3);
    EXPECT_EQ(CodeOf([&] { (void)ise(a, b); }), ErrorCode::GridMismatch);
    StepTrace shifted = b;
    for (double& t : shifted.t) t += 1e-3;
    EXPECT_EQ(CodeOf([&] { (void)ise(b, shifted); }), ErrorCode::GridMismatch);
    EXPECT_EQ(CodeOf([&] { (void)ise(b, c); }), ErrorCode::GridMismatch);
}

TEST(Ise, HalvingStepChangesLittleProperty) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial den = testing::unit_constant_from_roots(random_stable_roots(rng, 3, 1.0, 100.0));
        const TransferFunction g{Polynomial{1.0}, den};
        const TransferFunction h{Polynomial{1.0}, Polynomial{den[0], den[1], den[2]}};
        const StepGrid grid = default_step_grid(g);
        const double coarse = ise(step_response(g, grid.t_final, grid.dt), step_response(h, grid.t_final, grid.dt));
        const double fine =
            ise(step_response(g, grid.t_final, grid.dt / 2), step_response(h, grid.t_final, grid.dt / 2));
        EXPECT_LT(std::abs(coarse - fine), 1e-3 * fine) << "trial " << trial;
    }
}

TEST(ResponseMetrics, FirstOrderHasNoOvershoot) {
    const ResponseMetrics m = response_metrics(step_response(kFirstOrder, 10.0, 1e-3));
    EXPECT_EQ(m.overshoot_pct, 0.0);
    // 10%->90% rise of a unit lag is ln 9.
    EXPECT_NEAR(m.rise_10_90, std::log(9.0), 1e-3);
    // 2% settling of a unit lag is ln 50 relative to the settled mean.
    EXPECT_NEAR(m.settling_2pct, std::log(50.0), 0.05);
}

TEST(ResponseMetrics, DampingTargetTrace) {
    const double zeta = 0.707, wn = 100.0;
    const TransferFunction g{Polynomial{1.0}, Polynomial{1.0, 2.0 * zeta / wn, 1.0 / (wn * wn)}};
    const ResponseMetrics m = response_metrics(step_response(g, 0.5, 1e-4));
    EXPECT_NEAR(m.overshoot_pct, 4.3, 0.5);
    EXPECT_NEAR(m.final_value, 1.0, 1e-3);
}

TEST(ResponseMetrics, DivergingTraceIsNotSettled) {
    const TransferFunction ramp_like{Polynomial{1.0}, Polynomial{-0.5, 1.0}};
    const StepTrace tr = step_response(ramp_like, 10.0, 1e-3);
    EXPECT_EQ(CodeOf([&] { (void)response_metrics(tr); }), ErrorCode::NotSettled);
}

}  // namespace
}  // namespace mordrive::sim
