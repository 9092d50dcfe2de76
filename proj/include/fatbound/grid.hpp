#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fatbound {

/**
Real function on the circle sampled at x_j = j/n, j = 0..n-1.

Off-grid evaluation interpolates linearly between neighbouring nodes; the last
cell wraps from node n-1 to node 0 at x = 1.
*/
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(std::size_t n, double fill = 0.0);
    explicit GridFunction(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double node(std::size_t j) const noexcept { return static_cast<double>(j) / static_cast<double>(values_.size()); }

    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double& operator[](std::size_t j) noexcept { return values_[j]; }

    /// Linear interpolation at any real x (reduced mod 1).
    double operator()(double x) const;

    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& mutable_values() noexcept { return values_; }

    double max() const;
    double min() const;

private:
    std::vector<double> values_;
};

/// max_j |f_j - g_j|. Grids must have equal size.
double sup_distance(const GridFunction& f, const GridFunction& g);

/// Interpolation stencil for a fixed evaluation point.
struct Stencil {
    std::size_t lo;
    std::size_t hi;
    double t;
};

Stencil stencil_for(double x, std::size_t n);

}  // namespace fatbound
