#include "mordrive/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mordrive/error.hpp"

namespace mordrive {

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw Error(ErrorCode::ImproperTransferFunction, "denominator is the zero polynomial");
    }
    if (!num_.is_zero() && num_.degree() > den_.degree()) {
        throw Error(ErrorCode::ImproperTransferFunction, "numerator degree exceeds denominator degree",
                    {{"num_degree", num_.degree()}, {"den_degree", den_.degree()}});
    }
}

Complex TransferFunction::operator()(Complex s) const noexcept {
    return poly_eval(num_, s) / poly_eval(den_, s);
}

TransferFunction TransferFunction::scaled(double gain) const {
    return {num_.scaled(gain), den_};
}

TransferFunction series(const TransferFunction& g1, const TransferFunction& g2) {
    return {g1.num() * g2.num(), g1.den() * g2.den()};
}

TransferFunction close_loop(const TransferFunction& g, const TransferFunction& h) {
    Polynomial den = g.den() * h.den() + g.num() * h.num();
    if (den.is_zero()) {
        throw Error(ErrorCode::DegenerateLoop, "1 + G H vanishes identically");
    }
    return {g.num() * h.den(), std::move(den)};
}

double dc_gain(const TransferFunction& g) {
    if (g.den()[0] == 0.0) {
        throw Error(ErrorCode::PoleAtOrigin, "denominator has a root at s = 0");
    }
    return g.num()[0] / g.den()[0];
}

TimeScales time_scales(const Polynomial& den) {
    TimeScales out;
    if (den.degree() < 1) return out;
    double fastest = 0.0;
    double slowest_decay = std::numeric_limits<double>::infinity();
    for (const Complex& r : poly_roots(den)) {
        if (std::abs(r) == 0.0) continue;
        fastest = std::max(fastest, std::abs(r));
        double decay = std::abs(r.real()) > 0.0 ? std::abs(r.real()) : std::abs(r);
        slowest_decay = std::min(slowest_decay, decay);
    }
    if (fastest > 0.0) {
        out.smallest = 1.0 / fastest;
        out.largest = 1.0 / slowest_decay;
    }
    return out;
}

}  // namespace mordrive
