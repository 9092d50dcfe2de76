#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fatbound {

using RealFn = std::function<double(double)>;

/// Wraps x into [0, 1).
inline double wrap_unit(double x) {
    double y = x - std::floor(x);
    return y >= 1.0 ? 0.0 : y;
}

/**
Potential A : S^1 -> R.

Evaluation reduces the argument mod 1, so polynomial potentials are read
literally on [0,1) and extended periodically (they may jump at 0). The first
and second derivatives are analytic when supplied, otherwise computed by
central differences.
*/
class Potential {
public:
    Potential(std::string name, RealFn value, std::optional<RealFn> deriv1 = std::nullopt,
              std::optional<RealFn> deriv2 = std::nullopt, bool symmetric = false);

    const std::string& name() const noexcept { return name_; }
    bool symmetric() const noexcept { return symmetric_; }
    bool has_analytic_deriv1() const noexcept { return deriv1_.has_value(); }
    bool has_analytic_deriv2() const noexcept { return deriv2_.has_value(); }

    double operator()(double x) const { return value_(wrap_unit(x)); }
    double deriv1(double x) const;
    double deriv2(double x) const;

    /// Polynomial coefficients c0, c1, ... when the potential is a polynomial on [0,1).
    const std::optional<std::vector<double>>& poly_coeffs() const noexcept { return coeffs_; }

    /// max |A| over a 4096-point grid (cached at construction).
    double sup_norm() const noexcept { return sup_norm_; }
    /// max |A'| over a 4096-point grid (cached at construction).
    double lipschitz() const noexcept { return lipschitz_; }

    Potential with_coeffs(std::vector<double> c) const;
    Potential with_symmetric(bool s) const;

private:
    std::string name_;
    RealFn value_;
    std::optional<RealFn> deriv1_;
    std::optional<RealFn> deriv2_;
    bool symmetric_;
    std::optional<std::vector<double>> coeffs_;
    double sup_norm_ = 0.0;
    double lipschitz_ = 0.0;
};

/// c0 + c1 x + c2 x^2 + ... on [0,1).
Potential polynomial(std::vector<double> coeffs, std::string name = "poly");

/// -(x - 1/2)^2.
Potential quad_sym();

/// 6x - 3 on [0,1/2), -6x + 3 on [1/2,1). Derivative at kinks is the left one.
Potential tent();

/// -1/2 - cos(2 pi x) / 2.
Potential cosine();

/// sin(2 pi x).
Potential sine();

/// -(x - 1/2)^2 + eps * psi(x) - drift with the degree-7 bump psi.
Potential quad_eps(double eps, double drift);

/// -(1.010 x - 0.455)^2.
Potential quad_drift();

/// Constant potential.
Potential constant(double c);

/// Linear interpolation of a periodic table of (x, value) samples.
Potential table(std::vector<double> xs, std::vector<double> values, std::string name = "table");

/// Reads a two-column CSV "x,value" (an optional non-numeric header line is skipped).
Potential table_from_csv(const std::string& path);

/**
Builds a potential by name. Recognised names and params:
  poly (c0, c1, ...), quad_sym, tent, cosine, sine, quad_eps (eps, drift),
  quad_drift, const (c).
*/
Potential builtin(std::string_view name, const std::vector<double>& params = {});

/// Parses the command-line grammar, e.g. "poly:-0.25,1,-1", "quad_eps:0.05,0.2", "table:f.csv".
Potential parse_potential(std::string_view spec);

/// max |A'(j/n)| for j = 0..n-1. A lower bound of the true sup-norm.
double deriv_sup_norm(const Potential& a, int grid);

}  // namespace fatbound
