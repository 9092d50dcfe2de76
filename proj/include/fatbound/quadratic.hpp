#pragma once

#include <array>

#include "fatbound/potentials.hpp"
#include "fatbound/symbolic.hpp"

namespace fatbound {

/// A(x) = c0 + c1 x + c2 x^2 with discount lambda, d = 2.
struct QuadraticSpec {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double lambda = 0.5;

    QuadraticSpec(double c0, double c1, double c2, double lambda);

    /// Reads the coefficients of a polynomial potential of degree <= 2.
    static QuadraticSpec from_potential(const Potential& a, double lambda);

    Potential potential() const;
};

/// c1/(2-lambda) + 2 c2 x/(4-lambda) + 2 c2 Z(a)/(4-lambda).
double closed_s_deriv(const QuadraticSpec& q, double x, const SymbolSeq& a);

/// Twist holds exactly when c2 < 0.
inline bool twist_predicate(const QuadraticSpec& q) { return q.c2 < 0.0; }

struct ClosedCrossing {
    double x = 0.0;
    bool inside = false;  // 0 <= x <= 1
};

/**
Delta(., a, b) is affine for quadratic A with slope 2 c2 (Z(a) - Z(b))/(4 - lambda),
so its root is -Delta(0,a,b)(4 - lambda) / (2 c2 (Z(a) - Z(b))). Delta(0,a,b) comes from
the series. Throws NoCrossingError for parallel curves (c2 = 0 or Z(a) = Z(b)).
*/
ClosedCrossing closed_crossing(const QuadraticSpec& q, const SymbolSeq& a, const SymbolSeq& b);

struct SymmetricSubaction {
    double lambda = 0.0;
    std::array<double, 3> piece10{};  // S(x,(10)) = c0 + c1 x + c2 x^2, used on [0,1/2]
    std::array<double, 3> piece01{};  // S(x,(01)), used on [1/2,1]
    double b0 = 0.0;                  // S(0,(10)) from the series
    double b0_printed = 0.0;          // 2 lambda / (4 (4-lambda)(2+lambda)(lambda-1))
    double b_half = 0.0;              // S(1/2,(10))
    bool mismatch = false;            // |b0 - b0_printed| > 1e-6
};

/// Explicit subaction of -(x - 1/2)^2, constants anchored at series values.
SymmetricSubaction explicit_symmetric_subaction(double lambda);

}  // namespace fatbound
