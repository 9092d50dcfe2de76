#include "fatbound/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fatbound/error.hpp"
#include "fatbound/parallel.hpp"

namespace fatbound {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
}

void check_d(int d) {
    if (d < 2) throw std::invalid_argument("branch count d must be at least 2");
}

double circle_dist(double a, double b) {
    const double t = std::abs(wrap_unit(a) - wrap_unit(b));
    return std::min(t, 1.0 - t);
}

// lambda b(tau_i y) + A(tau_i y)
double branch_value(const GridFunction& b, const Potential& a, double lambda, int i, double y, int d) {
    const double z = inverse_branch(i, y, d);
    return lambda * b(z) + a(z);
}

}  // namespace

BellmanOperator::BellmanOperator(const Potential& a, double lambda, int d, std::size_t n, int jobs)
    : lambda_(lambda), d_(d), n_(n), jobs_(jobs) {
    check_lambda(lambda);
    check_d(d);
    if (n < 2) throw std::invalid_argument("grid needs at least two nodes");
    a_.resize(n * d);
    st_.resize(n * d);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        for (int i = 0; i < d; ++i) {
            const double z = inverse_branch(i, x, d);
            a_[j * d + i] = a(z);
            st_[j * d + i] = stencil_for(z, n);
        }
    }
}

void BellmanOperator::apply_into(const GridFunction& v, GridFunction& out) const {
    if (v.size() != n_ || out.size() != n_) throw std::invalid_argument("BellmanOperator: grid size mismatch");
    const auto in = v.values();
    auto& dst = out.mutable_values();
    detail::parallel_for(n_, jobs_, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            double best = -INFINITY;
            for (int i = 0; i < d_; ++i) {
                const auto& s = st_[j * d_ + i];
                const double vi = (1.0 - s.t) * in[s.lo] + s.t * in[s.hi];
                best = std::max(best, a_[j * d_ + i] + lambda_ * vi);
            }
            dst[j] = best;
        }
    });
}

GridFunction BellmanOperator::apply(const GridFunction& v) const {
    GridFunction out(n_);
    apply_into(v, out);
    return out;
}

GridFunction bellman_apply(const GridFunction& v, const Potential& a, double lambda, int d, int jobs) {
    return BellmanOperator(a, lambda, d, v.size(), jobs).apply(v);
}

SolveReport solve_subaction(const Potential& a, double lambda, const SolveOptions& opt) {
    check_lambda(lambda);
    if (!(opt.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const BellmanOperator op(a, lambda, opt.d, opt.n, opt.jobs);
    const double stop = opt.tol * (1.0 - lambda) / lambda;

    GridFunction v(opt.n), next(opt.n);
    double diff = INFINITY;
    long it = 0;
    while (it < opt.max_iter) {
        op.apply_into(v, next);
        ++it;
        diff = sup_distance(v, next);
        std::swap(v, next);
        if (diff <= stop) break;
    }
    const double bound = diff * lambda / (1.0 - lambda);
    if (diff > stop)
        throw ConvergenceError("value iteration did not reach the requested tolerance", bound, it);

    SolveReport r;
    r.b = std::move(v);
    r.iterations = it;
    r.final_residual = bound;
    r.lambda = lambda;
    r.d = opt.d;
    r.potential = a.name();
    return r;
}

double coboundary_shift_check(const Potential& a, const RealFn& g, double lambda, const SolveOptions& opt) {
    check_lambda(lambda);
    const int d = opt.d;
    Potential shifted(a.name() + "+coboundary", [a, g, lambda, d](double x) {
        return a(x) + g(wrap_unit(d * x)) / lambda - g(x);
    });
    const auto base = solve_subaction(a, lambda, opt);
    const auto moved = solve_subaction(shifted, lambda, opt);
    double m = 0.0;
    for (std::size_t j = 0; j < opt.n; ++j) {
        const double x = base.b.node(j);
        m = std::max(m, std::abs(moved.b[j] - (base.b[j] + g(x) / lambda)));
    }
    return m;
}

double rate_at(const GridFunction& b, const Potential& a, double lambda, double z, int d) {
    return b(d * z) - lambda * b(z) - a(z);
}

GridFunction rate_function(const GridFunction& b, const Potential& a, double lambda, int d) {
    GridFunction r(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) r[j] = rate_at(b, a, lambda, b.node(j), d);
    return r;
}

double gap_at(const GridFunction& b, const Potential& a, double lambda, double x) {
    return branch_value(b, a, lambda, 1, x, 2) - branch_value(b, a, lambda, 0, x, 2);
}

GridFunction gap_function(const GridFunction& b, const Potential& a, double lambda) {
    GridFunction g(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) g[j] = gap_at(b, a, lambda, b.node(j));
    return g;
}

double default_tie_tol(const Potential& a) { return 1e-9 * (1.0 + a.sup_norm()); }

TurningPoints turning_points(const GridFunction& b, const Potential& a, double lambda,
                             std::optional<double> tie_tol) {
    const double tt = tie_tol.value_or(default_tie_tol(a));
    const std::size_t n = b.size();
    std::vector<double> g(n);
    double gmax = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        g[j] = gap_at(b, a, lambda, b.node(j));
        gmax = std::max(gmax, std::abs(g[j]));
    }
    TurningPoints out;
    if (gmax <= tt) {
        out.degenerate = true;
        return out;
    }
    auto sgn = [tt](double v) { return v > tt ? 1 : (v < -tt ? -1 : 0); };
    auto f = [&](double x) { return gap_at(b, a, lambda, x); };

    // Walk over interior nodes; runs of near-zero values separate signed stretches.
    std::size_t last = 0;  // last node with nonzero sign, 0 = none yet
    for (std::size_t j = 1; j < n; ++j) {
        const int s = sgn(g[j]);
        if (s == 0) continue;
        if (last != 0) {
            const int sl = sgn(g[last]);
            if (sl != s) {
                double lo = b.node(last), hi = b.node(j);
                double flo = g[last];
                while (hi - lo > 1e-8) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = f(mid);
                    if ((fm > 0) == (flo > 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                out.points.push_back(0.5 * (lo + hi));
            } else if (j > last + 1) {
                // touches zero without changing sign: double maximum
                out.points.push_back(0.5 * (b.node(last + 1) + b.node(j - 1)));
            }
        }
        last = j;
    }
    return out;
}

std::optional<std::size_t> find_recurrence(std::span<const double> points, std::size_t k, double tol,
                                           std::size_t window) {
    const std::size_t stop = k > window ? k - window : 0;
    for (std::size_t j = k; j-- > stop;)
        if (circle_dist(points[k], points[j]) <= tol) return j;
    return std::nullopt;
}

namespace {

struct Step {
    Digit digit;
    bool tied;
};

Step greedy_step(const GridFunction& b, const Potential& a, double lambda, double y, double tt, int d) {
    double best = -INFINITY;
    std::vector<double> vals(d);
    for (int i = 0; i < d; ++i) {
        vals[i] = branch_value(b, a, lambda, i, y, d);
        best = std::max(best, vals[i]);
    }
    int pick = -1, within = 0;
    for (int i = 0; i < d; ++i)
        if (vals[i] >= best - tt) {
            ++within;
            pick = i;  // ties go to the larger digit
        }
    return {static_cast<Digit>(pick), within > 1};
}

}  // namespace

Realizer realizer(const GridFunction& b, const Potential& a, double lambda, double x0, std::size_t depth,
                  std::optional<double> tie_tol, int d) {
    check_d(d);
    const double tt = tie_tol.value_or(default_tie_tol(a));
    const std::size_t steps = std::max<std::size_t>(depth, 128);
    Realizer r;
    std::vector<double> pts{x0};
    std::vector<Digit> digs;
    std::vector<bool> ties;
    pts.reserve(steps + 1);
    bool every = true;
    for (std::size_t k = 0; k < steps; ++k) {
        const auto st = greedy_step(b, a, lambda, pts.back(), tt, d);
        digs.push_back(st.digit);
        ties.push_back(st.tied);
        every = every && st.tied;
        pts.push_back(inverse_branch(st.digit, pts.back(), d));
        if (!r.seq) {
            if (auto j = find_recurrence(pts, pts.size() - 1)) {
                const std::vector<Digit> pre(digs.begin(), digs.begin() + static_cast<std::ptrdiff_t>(*j));
                const std::vector<Digit> per(digs.begin() + static_cast<std::ptrdiff_t>(*j), digs.end());
                r.seq = SymbolSeq(pre, per, d);
            }
        }
    }
    r.all_tied = every;
    digs.resize(depth);
    ties.resize(depth);
    pts.resize(depth + 1);
    r.digits = std::move(digs);
    r.tied = std::move(ties);
    r.points = std::move(pts);
    return r;
}

std::vector<double> realizer_change_points(const GridFunction& b, const Potential& a, double lambda, std::size_t n,
                                           std::size_t depth, std::optional<double> tie_tol) {
    auto prefix = [&](double x) {
        auto r = realizer(b, a, lambda, x, depth, tie_tol);
        const bool tied = std::any_of(r.tied.begin(), r.tied.end(), [](bool t) { return t; });
        return std::pair{std::move(r.digits), tied};
    };
    std::vector<double> out;
    std::optional<std::pair<double, std::vector<Digit>>> prev;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        auto [digs, tied] = prefix(x);
        if (tied) continue;
        if (prev && prev->second != digs) {
            double lo = prev->first, hi = x;
            while (hi - lo > 1e-8) {
                const double mid = 0.5 * (lo + hi);
                if (prefix(mid).first == prev->second)
                    lo = mid;
                else
                    hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev.emplace(x, std::move(digs));
    }
    return out;
}

EmpiricalMeasure empirical_measure(const GridFunction& b, const Potential& a, double lambda, double x0,
                                   std::size_t n_steps, std::size_t bins, std::optional<double> tie_tol, int d) {
    check_d(d);
    if (bins == 0) throw std::invalid_argument("empirical_measure: bins must be positive");
    if (n_steps == 0) throw std::invalid_argument("empirical_measure: need at least one step");
    const double tt = tie_tol.value_or(default_tie_tol(a));
    EmpiricalMeasure m;
    m.steps = n_steps;
    m.histogram.assign(bins, 0.0);
    std::vector<double> pts{x0};
    std::size_t tied = 0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const auto st = greedy_step(b, a, lambda, pts.back(), tt, d);
        tied += st.tied ? 1 : 0;
        const double y = inverse_branch(st.digit, pts.back(), d);
        pts.push_back(y);
        // no wrapping here so that orbits accumulating at 1 land in the last bin
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, y) * static_cast<double>(bins)));
        m.histogram[bin] += 1.0 / static_cast<double>(n_steps);
    }
    m.degenerate = 2 * tied > n_steps;
    const std::size_t last = pts.size() - 1;
    if (auto j = find_recurrence(pts, last)) {
        PeriodicOrbit orb;
        orb.period = last - *j;
        orb.points.assign(pts.end() - static_cast<std::ptrdiff_t>(orb.period), pts.end());
        std::sort(orb.points.begin(), orb.points.end());
        m.orbit = std::move(orb);
    }
    return m;
}

std::vector<SweepRow> lambda_sweep(const Potential& a, std::span<const double> lambdas, const SolveOptions& opt) {
    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const auto rep = solve_subaction(a, lambda, opt);
        SweepRow row;
        row.lambda = lambda;
        row.max_b = rep.b.max();
        row.scaled = (1.0 - lambda) * row.max_b;
        row.iterations = rep.iterations;
        row.slow = lambda >= 0.95;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fatbound
