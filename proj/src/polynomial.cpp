#include "mordrive/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mordrive/error.hpp"

namespace mordrive {
namespace {

constexpr double kTrimTolerance = 1e-14;
constexpr double kUpdateTolerance = 1e-12;
constexpr int kMaxIterations = 500;
constexpr double kResidualTolerance = 1e-10;
constexpr double kRealnessTolerance = 1e-8;
constexpr double kMarginalTolerance = 1e-9;

std::vector<double> trimmed(std::vector<double> c) {
    for (double v : c) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "polynomial coefficient is not finite");
        }
    }
    if (c.empty()) return {0.0};
    double max_abs = 0.0;
    for (double v : c) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) return {0.0};
    while (c.size() > 1 && std::abs(c.back()) <= kTrimTolerance * max_abs) c.pop_back();
    return c;
}

Complex eval_with_derivative(std::span<const double> c, Complex s, Complex& derivative) {
    Complex value = c.back();
    derivative = 0.0;
    for (auto i = static_cast<std::ptrdiff_t>(c.size()) - 2; i >= 0; --i) {
        derivative = derivative * s + value;
        value = value * s + c[static_cast<std::size_t>(i)];
    }
    return value;
}

// Running error bound of Horner's rule, used when the absolute residual
// target sits below what double precision can resolve for large roots.
double horner_error_bound(std::span<const double> c, Complex s) {
    double abs_s = std::abs(s);
    double bound = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) bound = bound * abs_s + std::abs(*it);
    return 64.0 * std::numeric_limits<double>::epsilon() * bound;
}

bool residual_ok(std::span<const double> c, Complex z, double max_abs) {
    Complex unused;
    double r = std::abs(eval_with_derivative(c, z, unused));
    return r <= kResidualTolerance * max_abs || r <= horner_error_bound(c, z);
}

std::vector<Complex> aberth(std::span<const double> c) {
    const std::size_t n = c.size() - 1;
    const double lead = c.back();
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_ratio = std::max(max_ratio, std::abs(c[i] / lead));
    const double radius = 1.0 + max_ratio;

    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5 + jitter(rng)) /
                       static_cast<double>(n);
        double r = radius * (1.0 + 0.1 * jitter(rng));
        z[k] = std::polar(r, angle);
    }

    std::vector<bool> done(n, false);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            Complex dp;
            Complex pv = eval_with_derivative(c, z[k], dp);
            if (pv == 0.0) {
                done[k] = true;
                continue;
            }
            Complex ratio = pv / dp;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                step = ratio;
            }
            z[k] -= step;
            if (std::abs(step) <= kUpdateTolerance * (1.0 + std::abs(z[k]))) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if (all_done) break;
    }
    return z;
}

void polish(std::span<const double> c, Complex& z) {
    Complex dp;
    double best = std::abs(eval_with_derivative(c, z, dp));
    for (int i = 0; i < 8 && best > 0.0; ++i) {
        if (dp == 0.0) break;
        Complex candidate = z - eval_with_derivative(c, z, dp) / dp;
        Complex dp_next;
        double r = std::abs(eval_with_derivative(c, candidate, dp_next));
        if (!(r < best)) break;
        z = candidate;
        best = r;
        dp = dp_next;
    }
}

std::vector<double> positive_real_roots_in_x(const std::vector<double>& coeffs_in_x,
                                             const char* part) {
    Polynomial px(coeffs_in_x);
    std::vector<double> out;
    if (px.degree() < 1) return out;
    for (const Complex& x : poly_roots(px)) {
        if (std::abs(x.imag()) > kRealnessTolerance * (1.0 + std::abs(x.real()))) {
            throw Error(ErrorCode::NotFactorable,
                        std::string(part) + " part has a non-real root in s^2",
                        {{"root_real", x.real()}, {"root_imag", x.imag()}});
        }
        if (x.real() >= 0.0) {
            throw Error(ErrorCode::NotFactorable,
                        std::string(part) + " part has a non-negative root in s^2",
                        {{"root_real", x.real()}});
        }
        out.push_back(-x.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : coeffs_(trimmed(std::vector<double>(coeffs))) {}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(trimmed(std::move(coeffs))) {}

bool Polynomial::is_zero() const noexcept {
    return coeffs_.size() == 1 && coeffs_[0] == 0.0;
}

double Polynomial::operator[](int i) const noexcept {
    if (i < 0 || i > degree()) return 0.0;
    return coeffs_[static_cast<std::size_t>(i)];
}

double Polynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double v : coeffs_) m = std::max(m, std::abs(v));
    return m;
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v *= factor;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::reflected() const {
    std::vector<double> c = coeffs_;
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return Polynomial(std::move(c));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    auto ca = a.coeffs();
    auto cb = b.coeffs();
    std::vector<double> out(ca.size() + cb.size() - 1, 0.0);
    for (std::size_t i = 0; i < ca.size(); ++i) {
        for (std::size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0.0);
    for (int i = 0; i < static_cast<int>(out.size()); ++i) out[static_cast<std::size_t>(i)] = a[i] + b[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(-1.0); }

Complex poly_eval(const Polynomial& p, Complex s) noexcept {
    auto c = p.coeffs();
    Complex value = c.back();
    for (auto i = static_cast<std::ptrdiff_t>(c.size()) - 2; i >= 0; --i) {
        value = value * s + c[static_cast<std::size_t>(i)];
    }
    return value;
}

double poly_eval(const Polynomial& p, double s) noexcept {
    auto c = p.coeffs();
    double value = c.back();
    for (auto i = static_cast<std::ptrdiff_t>(c.size()) - 2; i >= 0; --i) {
        value = value * s + c[static_cast<std::size_t>(i)];
    }
    return value;
}

Polynomial poly_from_roots(std::span<const Complex> roots) {
    std::vector<Complex> c{1.0};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    std::vector<double> real(c.size());
    std::transform(c.begin(), c.end(), real.begin(), [](const Complex& v) { return v.real(); });
    return Polynomial(std::move(real));
}

std::vector<Complex> poly_roots(const Polynomial& p) {
    if (p.degree() < 1) {
        throw Error(ErrorCode::InvalidArgument, "root finding needs degree >= 1");
    }
    auto all = p.coeffs();
    std::size_t zeros = 0;
    while (all[zeros] == 0.0) ++zeros;
    std::span<const double> c = all.subspan(zeros);

    std::vector<Complex> roots(zeros, Complex{0.0, 0.0});
    if (c.size() == 1) return roots;
    if (c.size() == 2) {
        roots.emplace_back(-c[0] / c[1], 0.0);
        return roots;
    }

    const double max_abs = p.max_abs_coeff();
    std::vector<Complex> found = aberth(c);
    for (Complex& z : found) {
        polish(c, z);
        if (!residual_ok(c, z, max_abs)) {
            throw Error(ErrorCode::NonConvergence, "root iteration did not converge",
                        {{"root_real", z.real()}, {"root_imag", z.imag()}});
        }
    }
    roots.insert(roots.end(), found.begin(), found.end());
    return roots;
}

bool is_stable(const Polynomial& p) {
    if (p.degree() < 1) {
        throw Error(ErrorCode::InvalidArgument, "stability test needs degree >= 1");
    }
    for (const Complex& r : poly_roots(p)) {
        if (r.real() >= -kMarginalTolerance * (1.0 + std::abs(r))) return false;
    }
    return true;
}

Polynomial StabilityFactorization::recombine(std::size_t n_even, std::size_t n_odd) const {
    Polynomial even{e0};
    for (std::size_t i = 0; i < n_even && i < z_sq.size(); ++i) {
        even = even * Polynomial{1.0, 0.0, 1.0 / z_sq[i]};
    }
    Polynomial odd{0.0, e1};
    for (std::size_t i = 0; i < n_odd && i < p_sq.size(); ++i) {
        odd = odd * Polynomial{1.0, 0.0, 1.0 / p_sq[i]};
    }
    return even + odd;
}

bool StabilityFactorization::interlaced() const noexcept {
    std::vector<double> merged;
    for (std::size_t i = 0; i < std::max(z_sq.size(), p_sq.size()); ++i) {
        if (i < z_sq.size()) merged.push_back(z_sq[i]);
        if (i < p_sq.size()) merged.push_back(p_sq[i]);
    }
    if (p_sq.size() > z_sq.size() + 1 || z_sq.size() > p_sq.size() + 1) return false;
    if (p_sq.size() > z_sq.size()) return false;
    for (std::size_t i = 1; i < merged.size(); ++i) {
        if (!(merged[i - 1] < merged[i])) return false;
    }
    return std::all_of(merged.begin(), merged.end(), [](double v) { return v > 0.0; });
}

StabilityFactorization even_odd_factor(const Polynomial& d) {
    if (d.degree() < 1) {
        throw Error(ErrorCode::InvalidArgument, "even/odd factoring needs degree >= 1");
    }
    if (d[0] == 0.0) {
        throw Error(ErrorCode::ZeroConstantTerm, "constant term is zero (pole at the origin)");
    }
    if (d[1] == 0.0) {
        throw Error(ErrorCode::NotFactorable, "s coefficient is zero");
    }
    if (!is_stable(d)) {
        throw Error(ErrorCode::NotFactorable, "polynomial is not Hurwitz");
    }

    std::vector<double> even_x;
    std::vector<double> odd_x;
    for (int i = 0; i <= d.degree(); ++i) {
        (i % 2 == 0 ? even_x : odd_x).push_back(d[i]);
    }

    StabilityFactorization f;
    f.e0 = d[0];
    f.e1 = d[1];
    f.z_sq = positive_real_roots_in_x(even_x, "even");
    f.p_sq = positive_real_roots_in_x(odd_x, "odd");
    if (!f.interlaced()) {
        throw Error(ErrorCode::NotFactorable, "even/odd roots do not interlace");
    }
    return f;
}

Polynomial spectral_square(const Polynomial& p) {
    if (std::abs(p[0] - 1.0) > 1e-12) {
        throw Error(ErrorCode::NotNormalized, "constant term must be 1", {{"constant_term", p[0]}});
    }
    std::vector<double> c = poly_mul(p, p.reflected()).vec();
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = 0.0;
    return Polynomial(std::move(c));
}

}  // namespace mordrive
