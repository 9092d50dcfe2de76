#include "fatbound/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fatbound/series.hpp"
#include "fatbound/solver.hpp"

namespace fatbound {

DualEval::DualEval(Potential a, double lambda, double xbar, double tol)
    : a_(std::move(a)), lambda_(lambda), xbar_(xbar), tol_(tol) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("DualEval: lambda must lie in (0,1)");
    if (!(xbar >= 0.0 && xbar <= 1.0)) throw std::invalid_argument("DualEval: base point must lie in [0,1]");
}

double DualEval::s_bar(const SymbolSeq& c) const {
    {
        std::lock_guard lock(cache_->mu);
        if (auto it = cache_->values.find(c); it != cache_->values.end()) return it->second;
    }
    const double v = s_value(a_, lambda_, xbar_, c, tol_).value;
    std::lock_guard lock(cache_->mu);
    cache_->values.emplace(c, v);
    return v;
}

double DualEval::s(double x, const SymbolSeq& c) const { return s_value(a_, lambda_, x, c, tol_).value; }

double dual_potential(const DualEval& de, const SymbolSeq& c) {
    return de.s_bar(c) - de.lambda() * de.s_bar(shift(c));
}

double dual_subaction(const DualEval& de, const SymbolSeq& c) { return -de.s_bar(c); }

double dual_identity_residual(const DualEval& de, const SymbolSeq& c) {
    return std::abs(de.lambda() * dual_subaction(de, shift(c)) - dual_subaction(de, c) - dual_potential(de, c));
}

double admissibility_gap(const GridFunction& b, const DualEval& de, double x, const SymbolSeq& a) {
    return b(x) - de.s(x, a);
}

double fundamental_relation_residual(const GridFunction& b, const DualEval& de, double x, const SymbolSeq& a) {
    const int d = a.d();
    const double z = inverse_branch(a[0], x, d);
    const double r = rate_at(b, de.potential(), de.lambda(), z, d);
    return std::abs(r - admissibility_gap(b, de, x, a) + de.lambda() * admissibility_gap(b, de, z, shift(a)));
}

PlanOrbit plan_orbit(const DualEval& de, const GridFunction& b, double x0, const SymbolSeq& a0, std::size_t n,
                     double tol) {
    const double p0 = admissibility_gap(b, de, x0, a0);
    if (p0 > tol) throw std::invalid_argument("plan_orbit: starting pair is not optimal");
    PlanOrbit out;
    std::vector<double> xs{x0};
    out.steps.push_back({x0, a0, p0});
    for (std::size_t k = 0; k < n; ++k) {
        const auto& cur = out.steps.back();
        const double x = inverse_branch(cur.a[0], cur.x, cur.a.d());
        SymbolSeq a = shift(cur.a);
        const double p = admissibility_gap(b, de, x, a);
        out.steps.push_back({x, std::move(a), p});
        xs.push_back(x);
        if (!out.period) {
            const std::size_t last = xs.size() - 1;
            if (auto j = find_recurrence(xs, last); j && out.steps[*j].a == out.steps[last].a) out.period = last - *j;
        }
    }
    for (const auto& s : out.steps) out.p_max = std::max(out.p_max, s.p);

    const std::size_t len = out.period.value_or(out.steps.size());
    const auto first = out.steps.end() - static_cast<std::ptrdiff_t>(len);
    double lhs = 0.0, bstar = 0.0, bval = 0.0;
    for (auto it = first; it != out.steps.end(); ++it) {
        lhs += -(de.s(it->x, it->a) - de.s_bar(it->a));
        bstar += -dual_subaction(de, it->a);
        bval += -b(it->x);
    }
    out.cost_lhs = lhs / static_cast<double>(len);
    out.cost_rhs = (bstar + bval) / static_cast<double>(len);
    return out;
}

Monotonicity realizer_monotonicity(const GridFunction& b, const Potential& a, double lambda, std::size_t n,
                                   std::size_t depth) {
    Monotonicity m;
    std::vector<std::vector<Digit>> prefixes;
    std::vector<double> xs;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        auto r = realizer(b, a, lambda, x, depth);
        if (std::any_of(r.tied.begin(), r.tied.end(), [](bool t) { return t; })) continue;
        prefixes.push_back(std::move(r.digits));
        xs.push_back(x);
    }
    if (prefixes.empty()) {
        m.skipped = true;
        m.orientation = "skipped";
        return m;
    }
    int dir = 0;
    for (std::size_t k = 1; k < prefixes.size(); ++k) {
        const auto c = prefixes[k] <=> prefixes[k - 1];
        if (c == 0) continue;
        ++m.switches;
        const int s = c > 0 ? 1 : -1;
        if (dir == 0) dir = s;
        if (s != dir) m.violations.push_back(xs[k]);
    }
    m.ok = m.violations.empty();
    m.orientation = dir == 0 ? "constant" : (dir > 0 ? "increasing" : "decreasing");
    return m;
}

}  // namespace fatbound
