#include "mordrive/polynomial.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mordrive/error.hpp"
#include "test_support.hpp"

namespace mordrive {
namespace {

using testing::random_stable_roots;
using testing::unit_constant_from_roots;

// (1 + 0.1077 s)(1 + 0.0208 s)(1 + 0.00138 s), expanded by hand.
const Polynomial kLoopDen{1.0, 0.12988, 0.00241749, 3.0914208e-6};

void ExpectCoeffsNear(const Polynomial& p, const std::vector<double>& want, double rel) {
    ASSERT_EQ(p.degree() + 1, static_cast<int>(want.size()));
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(p[static_cast<int>(i)], want[i], rel * std::abs(want[i])) << "coefficient " << i;
    }
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

TEST(Polynomial, TrimsLeadingZerosAndKeepsZeroPolynomial) {
    EXPECT_EQ(Polynomial({1.0, 2.0, 0.0, 1e-20}).degree(), 1);
    EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
    EXPECT_TRUE(Polynomial(std::vector<double>{}).is_zero());
    EXPECT_EQ(CodeOf([] { (void)Polynomial({1.0, std::nan("")}); }), ErrorCode::InvalidArgument);
}

TEST(PolyMul, Examples) {
    ExpectCoeffsNear(poly_mul({1.0}, {1.0, 0.03}), {1.0, 0.03}, 0.0);
    ExpectCoeffsNear(poly_mul({1.0, 1.0}, {1.0, 1.0}), {1.0, 2.0, 1.0}, 0.0);
    const Polynomial p = poly_mul(poly_mul({1.0, 0.1077}, {1.0, 0.0208}), {1.0, 0.00138});
    ExpectCoeffsNear(p, {1.0, 0.12988, 0.00241749, 3.09142e-6}, 1e-5);
}

TEST(PolyEval, Examples) {
    EXPECT_EQ(poly_eval(Polynomial{1.0, 2.0, 1.0}, Complex{-1.0, 0.0}), Complex(0.0, 0.0));
    EXPECT_EQ(poly_eval(Polynomial{1.0}, Complex{0.0, 100.0}), Complex(1.0, 0.0));
    EXPECT_EQ(poly_eval(kLoopDen, Complex{0.0, 0.0}), Complex(1.0, 0.0));
}

TEST(PolyRoots, FactorableQuadratic) {
    auto r = poly_roots(Polynomial{2.0, 3.0, 1.0});
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    ASSERT_EQ(r.size(), 2U);
    EXPECT_NEAR(r[0].real(), -2.0, 1e-12);
    EXPECT_NEAR(r[1].real(), -1.0, 1e-12);
    EXPECT_NEAR(r[0].imag(), 0.0, 1e-12);
}

TEST(PolyRoots, ImaginaryPair) {
    auto r = poly_roots(Polynomial{1.0, 0.0, 1.0});
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
    EXPECT_NEAR(r[0].imag(), -1.0, 1e-12);
    EXPECT_NEAR(r[1].imag(), 1.0, 1e-12);
    EXPECT_NEAR(r[0].real(), 0.0, 1e-12);
}

TEST(PolyRoots, MotorCharacteristicPolynomial) {
    // J La s^2 + (Bt La + J Ra) s + (Kb^2 + Ra Bt); quadratic formula gives
    // -9.2819 and -47.7053.
    auto r = poly_roots(Polynomial{1.9352, 0.2490568, 0.0043704});
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
    EXPECT_NEAR(r[0].real(), -9.28, 0.005 * 9.28);
    EXPECT_NEAR(r[1].real(), -47.7, 0.005 * 47.7);
    EXPECT_NEAR(r[0].real(), -9.281933806691, 1e-9);
    EXPECT_NEAR(r[1].real(), -47.705252720858, 1e-9);
}

TEST(PolyRoots, ResidualBoundAndCount) {
    auto r = poly_roots(kLoopDen);
    ASSERT_EQ(r.size(), 3U);
    for (const Complex& z : r) {
        EXPECT_LE(std::abs(poly_eval(kLoopDen, z)), 1e-10 * kLoopDen.max_abs_coeff());
    }
}

TEST(PolyRoots, ExactZerosAtOrigin) {
    auto r = poly_roots(Polynomial{0.0, 0.0, 2.0, 1.0});
    ASSERT_EQ(r.size(), 3U);
    EXPECT_EQ(r[0], Complex(0.0, 0.0));
    EXPECT_EQ(r[1], Complex(0.0, 0.0));
    EXPECT_NEAR(r[2].real(), -2.0, 1e-14);
}

TEST(PolyRoots, RejectsConstants) {
    EXPECT_EQ(CodeOf([] { (void)poly_roots(Polynomial{3.0}); }), ErrorCode::InvalidArgument);
}

TEST(PolyRoots, RoundTripFromRandomRoots) {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = deg(rng);
        std::vector<Complex> roots;
        auto separated = [&](Complex c) {
            return std::all_of(roots.begin(), roots.end(), [&](Complex o) { return std::abs(o - c) >= 0.01; });
        };
        while (static_cast<int>(roots.size()) < n) {
            if (n - static_cast<int>(roots.size()) >= 2 && coord(rng) > 3.0) {
                Complex c{coord(rng), std::abs(coord(rng)) + 0.01};
                if (separated(c) && separated(std::conj(c))) {
                    roots.push_back(c);
                    roots.push_back(std::conj(c));
                }
            } else {
                Complex c{coord(rng), 0.0};
                if (separated(c)) roots.push_back(c);
            }
        }
        const Polynomial p = poly_from_roots(roots);
        const Polynomial back = poly_from_roots(poly_roots(p));
        ASSERT_EQ(back.degree(), p.degree());
        const double scale = p.max_abs_coeff();
        for (int i = 0; i <= p.degree(); ++i) {
            ASSERT_NEAR(back[i], p[i], 1e-8 * scale) << "trial " << trial << " coefficient " << i;
        }
    }
}

TEST(IsStable, Examples) {
    EXPECT_TRUE(is_stable(Polynomial{1.0, 1.0}));
    EXPECT_FALSE(is_stable(Polynomial{-1.0, 1.0}));
    EXPECT_TRUE(is_stable(kLoopDen));
    EXPECT_FALSE(is_stable(Polynomial{1.0, 0.0, 1.0}));
    EXPECT_FALSE(is_stable(Polynomial{0.0, 1.0, 1.0}));
}

TEST(EvenOddFactor, LoopDenominator) {
    const StabilityFactorization f = even_odd_factor(kLoopDen);
    EXPECT_DOUBLE_EQ(f.e0, 1.0);
    EXPECT_DOUBLE_EQ(f.e1, 0.12988);
    ASSERT_EQ(f.z_sq.size(), 1U);
    ASSERT_EQ(f.p_sq.size(), 1U);
    // z1^2 = 1/0.00241749, p1^2 = 0.12988/3.0914208e-6
    EXPECT_NEAR(f.z_sq[0], 413.65, 0.001 * 413.65);
    EXPECT_NEAR(f.p_sq[0], 42013.0, 0.001 * 42013.0);
    EXPECT_NEAR(f.z_sq[0], 1.0 / 0.00241749, 1e-9);
    EXPECT_NEAR(f.p_sq[0], 0.12988 / 3.0914208e-6, 1e-6);
    EXPECT_TRUE(f.interlaced());
}

TEST(EvenOddFactor, DoubleRealPole) {
    const StabilityFactorization f = even_odd_factor(Polynomial{1.0, 2.0, 1.0});
    EXPECT_EQ(f.e0, 1.0);
    EXPECT_EQ(f.e1, 2.0);
    ASSERT_EQ(f.z_sq.size(), 1U);
    EXPECT_NEAR(f.z_sq[0], 1.0, 1e-14);
    EXPECT_TRUE(f.p_sq.empty());
}

TEST(EvenOddFactor, ErrorPaths) {
    EXPECT_EQ(CodeOf([] { (void)even_odd_factor(Polynomial{1.0, 1.0, 1.0, 1.0}); }), ErrorCode::NotFactorable);
    EXPECT_EQ(CodeOf([] { (void)even_odd_factor(Polynomial{0.0, 1.0, 1.0}); }), ErrorCode::ZeroConstantTerm);
    EXPECT_EQ(CodeOf([] { (void)even_odd_factor(Polynomial{1.0, -1.0, 1.0}); }), ErrorCode::NotFactorable);
    EXPECT_EQ(CodeOf([] { (void)even_odd_factor(Polynomial{1.0, 0.0, 1.0}); }), ErrorCode::NotFactorable);
}

TEST(EvenOddFactor, ReconstructionAndInterlacingProperty) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg(1, 8);
    int factored = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Polynomial d = unit_constant_from_roots(random_stable_roots(rng, deg(rng), 0.2, 20.0));
        const StabilityFactorization f = even_odd_factor(d);
        ASSERT_TRUE(f.interlaced()) << "trial " << trial;
        for (std::size_t i = 1; i < f.z_sq.size(); ++i) ASSERT_LT(f.z_sq[i - 1], f.z_sq[i]);
        for (std::size_t i = 0; i < f.p_sq.size(); ++i) {
            ASSERT_LT(f.z_sq[i], f.p_sq[i]);
            if (i + 1 < f.z_sq.size()) ASSERT_LT(f.p_sq[i], f.z_sq[i + 1]);
        }
        const Polynomial back = f.recombine();
        ASSERT_EQ(back.degree(), d.degree());
        for (int i = 0; i <= d.degree(); ++i) {
            ASSERT_NEAR(back[i], d[i], 1e-8 * std::abs(d[i])) << "trial " << trial << " coefficient " << i;
        }
        ++factored;
    }
    EXPECT_EQ(factored, 500);
}

// Coefficient of s^(2x) by the alternating-sum formula
//   sum_{i<x} (-1)^i 2 m_i m_{2x-i} + (-1)^x m_x^2
double AlternatingSum(const Polynomial& m, int x) {
    double v = 0.0;
    for (int i = 0; i < x; ++i) v += (i % 2 == 0 ? 2.0 : -2.0) * m[i] * m[2 * x - i];
    v += (x % 2 == 0 ? 1.0 : -1.0) * m[x] * m[x];
    return v;
}

TEST(SpectralSquare, Examples) {
    const Polynomial sq = spectral_square(Polynomial{1.0, 2.0, 1.0});
    ExpectCoeffsNear(sq, {1.0, 0.0, -2.0, 0.0, 1.0}, 0.0);
    EXPECT_EQ(spectral_square(Polynomial{1.0}), Polynomial{1.0});
    const Polynomial m{1.0, 0.15988, 0.0063139, 7.2525e-5};
    EXPECT_NEAR(spectral_square(m)[2], -0.0129338, 1e-5);
    EXPECT_EQ(CodeOf([] { (void)spectral_square(Polynomial{2.0, 1.0}); }), ErrorCode::NotNormalized);
}

TEST(SpectralSquare, MatchesAlternatingSumFormula) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial p = unit_constant_from_roots(random_stable_roots(rng, 1 + trial % 6, 0.1, 50.0));
        const Polynomial sq = spectral_square(p);
        for (int x = 1; x <= p.degree(); ++x) {
            const double want = AlternatingSum(p, x);
            ASSERT_NEAR(sq[2 * x], want, 1e-12 * (1.0 + std::abs(want)));
            ASSERT_EQ(sq[2 * x - 1], 0.0);
        }
    }
}

TEST(SpectralSquare, EqualsSquaredMagnitudeOnAxis) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial p = unit_constant_from_roots(random_stable_roots(rng, 1 + trial % 8, 0.2, 20.0));
        const Polynomial sq = spectral_square(p);
        for (int k = 0; k < 100; ++k) {
            const double w = std::pow(10.0, -2.0 + 5.0 * k / 99.0);
            const double want = std::norm(poly_eval(p, Complex{0.0, w}));
            const double got = poly_eval(sq, Complex{0.0, w}).real();
            ASSERT_NEAR(got, want, 1e-10 * want) << "trial " << trial << " w " << w;
        }
    }
}

}  // namespace
}  // namespace mordrive
