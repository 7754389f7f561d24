#pragma once

#include "mordrive/polynomial.hpp"

namespace mordrive {

// Proper SISO rational function num(s) / den(s). No pole-zero cancellation is
// ever performed.
class TransferFunction {
public:
    // Throws ImproperTransferFunction when den is zero or deg(num) > deg(den).
    TransferFunction(Polynomial num, Polynomial den);

    [[nodiscard]] const Polynomial& num() const noexcept { return num_; }
    [[nodiscard]] const Polynomial& den() const noexcept { return den_; }

    [[nodiscard]] Complex operator()(Complex s) const noexcept;
    [[nodiscard]] TransferFunction scaled(double gain) const;

    friend bool operator==(const TransferFunction&, const TransferFunction&) = default;

private:
    Polynomial num_;
    Polynomial den_;
};

[[nodiscard]] TransferFunction series(const TransferFunction& g1, const TransferFunction& g2);

// Negative feedback g / (1 + g h). Throws DegenerateLoop when the closed-loop
// denominator vanishes identically.
[[nodiscard]] TransferFunction close_loop(const TransferFunction& g, const TransferFunction& h);

// num[0] / den[0]; throws PoleAtOrigin when den[0] == 0.
[[nodiscard]] double dc_gain(const TransferFunction& g);

// Time constants 1/|root| of the denominator: smallest from the fastest
// pole, largest from the slowest decay rate. Poles at the origin are skipped.
struct TimeScales {
    double smallest = 0.0;
    double largest = 0.0;
};
[[nodiscard]] TimeScales time_scales(const Polynomial& den);

}  // namespace mordrive
