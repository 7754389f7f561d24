#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace mordrive {

using Complex = std::complex<double>;

// Real polynomial in s with coefficients in ascending powers: coeffs()[i]
// multiplies s^i. Leading coefficients with |c| <= 1e-14 * max|c| are trimmed
// on construction; the zero polynomial is stored as [0].
class Polynomial {
public:
    Polynomial();
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const std::vector<double>& vec() const noexcept { return coeffs_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept;

    // Coefficient of s^i; zero past the degree.
    [[nodiscard]] double operator[](int i) const noexcept;
    [[nodiscard]] double leading() const noexcept { return coeffs_.back(); }
    [[nodiscard]] double max_abs_coeff() const noexcept;

    [[nodiscard]] Polynomial scaled(double factor) const;
    // p(-s): odd coefficients negated.
    [[nodiscard]] Polynomial reflected() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> coeffs_;
};

[[nodiscard]] Polynomial operator*(const Polynomial& a, const Polynomial& b);
[[nodiscard]] Polynomial operator+(const Polynomial& a, const Polynomial& b);
[[nodiscard]] Polynomial operator-(const Polynomial& a, const Polynomial& b);

// Coefficient convolution; degree(a*b) = degree(a) + degree(b).
[[nodiscard]] Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

// Horner evaluation.
[[nodiscard]] Complex poly_eval(const Polynomial& p, Complex s) noexcept;
[[nodiscard]] double poly_eval(const Polynomial& p, double s) noexcept;

// Polynomial with the given roots and leading coefficient 1. Complex roots
// must appear in conjugate pairs; imaginary round-off is discarded.
[[nodiscard]] Polynomial poly_from_roots(std::span<const Complex> roots);

// All complex roots by Aberth-Ehrlich simultaneous iteration followed by
// Newton polishing. Deterministic: the initial perturbation uses a fixed seed.
// Throws NonConvergence when a root cannot be brought to
// |p(root)| <= 1e-10 * max|coeff|.
[[nodiscard]] std::vector<Complex> poly_roots(const Polynomial& p);

// True iff every root lies strictly in the open left half-plane. Roots within
// 1e-9 * (1 + |root|) of the imaginary axis count as marginal (not stable).
[[nodiscard]] bool is_stable(const Polynomial& p);

// Even/odd stability-equation factors of a Hurwitz polynomial d:
//   even part  e0 * prod(1 + s^2 / z_i^2)
//   odd part   e1 * s * prod(1 + s^2 / p_i^2)
// with z1^2 < p1^2 < z2^2 < p2^2 < ...
struct StabilityFactorization {
    double e0 = 0.0;
    double e1 = 0.0;
    std::vector<double> z_sq;
    std::vector<double> p_sq;

    // Recombines the first n_even z factors and n_odd p factors.
    [[nodiscard]] Polynomial recombine(std::size_t n_even, std::size_t n_odd) const;
    [[nodiscard]] Polynomial recombine() const { return recombine(z_sq.size(), p_sq.size()); }
    [[nodiscard]] bool interlaced() const noexcept;
};

// Factors the even and odd parts of d by substituting x = s^2 and solving the
// two half-degree polynomials in x. Throws ZeroConstantTerm when d0 == 0 and
// NotFactorable when d is not Hurwitz or any root in x is not real negative.
[[nodiscard]] StabilityFactorization even_odd_factor(const Polynomial& d);

// P(s) * P(-s) for p with unit constant term. Only even powers are nonzero.
// Throws NotNormalized when p[0] != 1.
[[nodiscard]] Polynomial spectral_square(const Polynomial& p);

}  // namespace mordrive
