#include "fatbound/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fatbound/potentials.hpp"

namespace fatbound {

GridFunction::GridFunction(std::size_t n, double fill) : values_(n, fill) {
    if (n < 2) throw std::invalid_argument("GridFunction: need at least two nodes");
}

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw std::invalid_argument("GridFunction: need at least two nodes");
}

Stencil stencil_for(double x, std::size_t n) {
    const double u = wrap_unit(x) * static_cast<double>(n);
    auto lo = static_cast<std::size_t>(u);
    if (lo >= n) lo = n - 1;
    const double t = u - static_cast<double>(lo);
    return {lo, lo + 1 == n ? 0 : lo + 1, t};
}

double GridFunction::operator()(double x) const {
    const auto s = stencil_for(x, values_.size());
    return (1.0 - s.t) * values_[s.lo] + s.t * values_[s.hi];
}

double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

double sup_distance(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size()) throw std::invalid_argument("sup_distance: grid sizes differ");
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j] - g[j]));
    return m;
}

}  // namespace fatbound
