#include "fatbound/quadratic.hpp"

#include <cmath>
#include <stdexcept>

#include "fatbound/error.hpp"
#include "fatbound/series.hpp"

namespace fatbound {

QuadraticSpec::QuadraticSpec(double c0_, double c1_, double c2_, double lambda_)
    : c0(c0_), c1(c1_), c2(c2_), lambda(lambda_) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("QuadraticSpec: lambda must lie in (0,1)");
}

QuadraticSpec QuadraticSpec::from_potential(const Potential& a, double lambda) {
    const auto& c = a.poly_coeffs();
    if (!c || c->size() > 3) throw UnsupportedError("QuadraticSpec: potential is not a polynomial of degree <= 2");
    auto at = [&](std::size_t i) { return i < c->size() ? (*c)[i] : 0.0; };
    return {at(0), at(1), at(2), lambda};
}

Potential QuadraticSpec::potential() const { return polynomial({c0, c1, c2}, "quadratic"); }

double closed_s_deriv(const QuadraticSpec& q, double x, const SymbolSeq& a) {
    const double l = q.lambda;
    return q.c1 / (2.0 - l) + 2.0 * q.c2 * x / (4.0 - l) + 2.0 * q.c2 * z_value(a, l) / (4.0 - l);
}

ClosedCrossing closed_crossing(const QuadraticSpec& q, const SymbolSeq& a, const SymbolSeq& b) {
    const double l = q.lambda;
    const double dz = z_value(a, l) - z_value(b, l);
    if (q.c2 == 0.0 || dz == 0.0) throw NoCrossingError("parallel curves: no isolated crossing");
    const Potential p = q.potential();
    const double d0 = s_value(p, l, 0.0, a).value - s_value(p, l, 0.0, b).value;
    ClosedCrossing r;
    r.x = -d0 * (4.0 - l) / (2.0 * q.c2 * dz);
    r.inside = r.x >= 0.0 && r.x <= 1.0;
    return r;
}

SymmetricSubaction explicit_symmetric_subaction(double lambda) {
    const QuadraticSpec q(-0.25, 1.0, -1.0, lambda);
    const Potential p = q.potential();
    const auto s10 = SymbolSeq::periodic({1, 0});
    const auto s01 = SymbolSeq::periodic({0, 1});
    const double curv = q.c2 / (4.0 - lambda);

    SymmetricSubaction r;
    r.lambda = lambda;
    r.piece10 = {s_value(p, lambda, 0.0, s10).value, closed_s_deriv(q, 0.0, s10), curv};
    r.piece01 = {s_value(p, lambda, 0.0, s01).value, closed_s_deriv(q, 0.0, s01), curv};
    r.b0 = r.piece10[0];
    r.b0_printed = 2.0 * lambda / (4.0 * (4.0 - lambda) * (2.0 + lambda) * (lambda - 1.0));
    r.b_half = s_value(p, lambda, 0.5, s10).value;
    r.mismatch = std::abs(r.b0 - r.b0_printed) > 1e-6;
    return r;
}

}  // namespace fatbound
