#include "fatbound/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fatbound/error.hpp"
#include "fatbound/solver.hpp"

namespace fatbound {

namespace {

constexpr double kBelowOne = 1.0 - 0x1p-53;
constexpr double kCycleSnap = 1e-15;

double eval_left(const Potential& a, double y) { return a(y >= 1.0 ? kBelowOne : y); }

double deriv_left(const Potential& a, double y) { return a.deriv1(y >= 1.0 ? kBelowOne : y); }

void check_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
}

// Attracting cycle of y -> tau_{per[p-1]} o ... o tau_{per[0]} (y).
struct Cycle {
    double start = 0.0;  // fixed point, the point before per[0] is applied
    double sum = 0.0;    // sum_m lambda^m A(point after per[m])
    double lp = 1.0;     // lambda^p
};

Cycle make_cycle(const Potential& a, double lambda, const SymbolSeq& seq) {
    const int d = seq.d();
    const auto& per = seq.period();
    double c = 0.0;
    double dp = 1.0;
    for (Digit i : per) {
        c = (c + i) / d;
        dp *= d;
    }
    Cycle cyc;
    cyc.start = c * dp / (dp - 1.0);
    double y = cyc.start;
    for (Digit i : per) {
        y = std::min(inverse_branch(i, y, d), kBelowOne);
        cyc.sum += cyc.lp * a(y);
        cyc.lp *= lambda;
    }
    return cyc;
}

}  // namespace

SeriesValue s_value(const Potential& a, double lambda, double x, const SymbolSeq& seq, double tol,
                    std::size_t fixed_depth) {
    check_lambda(lambda);
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("s_value: x must lie in [0,1]");
    const int d = seq.d();
    const double scale = a.sup_norm() / (1.0 - lambda);
    double y = x, sum = 0.0, w = 1.0;
    std::size_t k = 0;

    if (fixed_depth > 0) {
        for (; k < fixed_depth; ++k) {
            y = inverse_branch(seq[k], y, d);
            sum += w * eval_left(a, y);
            w *= lambda;
        }
        return {sum, w * scale, k};
    }

    const Cycle cyc = make_cycle(a, lambda, seq);
    const std::size_t m = seq.preperiod().size();
    const std::size_t p = seq.period().size();
    while (true) {
        if (k >= m && (k - m) % p == 0 && std::abs(y - cyc.start) <= kCycleSnap)
            return {sum + w * cyc.sum / (1.0 - cyc.lp), 0.0, k};
        if (w * scale <= tol) return {sum, w * scale, k};
        y = inverse_branch(seq[k], y, d);
        sum += w * eval_left(a, y);
        w *= lambda;
        ++k;
    }
}

double s_cocycle_check(const Potential& a, double lambda, double x, const SymbolSeq& seq, double tol) {
    const int d = seq.d();
    const double dx = d * x;
    if (!(x > 0.0 && x < 1.0) || dx == std::floor(dx))
        throw std::invalid_argument("s_cocycle_check: x lies on a branch boundary");
    const auto i = static_cast<Digit>(std::floor(dx));
    const double tx = dx - i;
    const double lhs = s_value(a, lambda, tx, concat(i, seq), tol).value;
    const double rhs = a(x) + lambda * s_value(a, lambda, x, seq, tol).value;
    return std::abs(lhs - rhs);
}

SeriesValue w_value(const Potential& a, double lambda, double x, const SymbolSeq& seq, double xbar, double tol) {
    const auto s = s_value(a, lambda, x, seq, tol);
    const auto s0 = s_value(a, lambda, xbar, seq, tol);
    return {s.value - s0.value, s.tail_bound + s0.tail_bound, std::max(s.depth, s0.depth)};
}

SeriesValue s_deriv(const Potential& a, double lambda, double x, const SymbolSeq& seq, double tol) {
    check_lambda(lambda);
    const int d = seq.d();
    const double q = lambda / d;
    const double lip = a.lipschitz();
    double y = x, sum = 0.0, w = 1.0 / d;
    std::size_t k = 0;
    while (w * lip / (1.0 - q) > tol) {
        y = inverse_branch(seq[k], y, d);
        sum += w * deriv_left(a, y);
        w *= q;
        ++k;
    }
    return {sum, w * lip / (1.0 - q), k};
}

DeltaValue delta(const Potential& a, double lambda, double x, const SymbolSeq& s1, const SymbolSeq& s2,
                 double tol) {
    if (s1.d() != s2.d()) throw std::invalid_argument("delta: mismatched alphabets");
    const auto v1 = s_value(a, lambda, x, s1, tol);
    const auto v2 = s_value(a, lambda, x, s2, tol);
    const int d = s1.d();
    const double q = lambda / d;
    const double lip = a.lipschitz();
    double y1 = x, y2 = x, sum = 0.0, w = 1.0 / d;
    for (std::size_t k = 0; w * 2.0 * lip / (1.0 - q) > tol; ++k) {
        y1 = inverse_branch(s1[k], y1, d);
        y2 = inverse_branch(s2[k], y2, d);
        if (y1 != y2) sum += w * (deriv_left(a, y1) - deriv_left(a, y2));
        w *= q;
    }
    return {v1.value - v2.value, sum, v1.tail_bound + v2.tail_bound + w * 2.0 * lip / (1.0 - q)};
}

double crossing_point(const Potential& a, double lambda, const SymbolSeq& s1, const SymbolSeq& s2, double lo,
                      double hi, double tol) {
    if (s1 == s2) throw NoCrossingError("no crossing in bracket: identical sequences");
    auto f = [&](double x) { return s_value(a, lambda, x, s1, tol).value - s_value(a, lambda, x, s2, tol).value; };
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NoCrossingError("no crossing in bracket");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

AngleBound angle_bound_check(const Potential& a, double lambda, const SymbolSeq& s1, const SymbolSeq& s2,
                             double x) {
    if (s1.d() != 2 || s2.d() != 2) throw UnsupportedError("angle_bound_check: d = 2 only");
    const auto n = first_difference(s1, s2);
    if (!n) throw std::invalid_argument("angle_bound_check: sequences are equal");
    AngleBound r;
    r.n = *n;
    r.lhs = std::abs(delta(a, lambda, x, s1, s2, 1e-15).deriv);
    r.rhs = a.lipschitz() * std::pow(lambda / 2.0, static_cast<double>(*n)) * 2.0 / (2.0 - lambda);
    r.ok = r.lhs <= r.rhs + 1e-12;
    return r;
}

std::vector<SymbolSeq> candidates(int d, std::size_t period_max, std::size_t preperiod_max) {
    if (period_max < 1) throw std::invalid_argument("candidates: period_max must be at least 1");
    if (d < 2) throw std::invalid_argument("candidates: d must be at least 2");
    // every word of length len over {0..d-1}, in counting order
    auto words = [d](std::size_t len) {
        std::vector<std::vector<Digit>> out;
        std::vector<Digit> w(len, 0);
        while (true) {
            out.push_back(w);
            std::size_t i = len;
            while (i > 0 && w[i - 1] == d - 1) w[--i] = 0;
            if (i == 0) break;
            ++w[i - 1];
        }
        return out;
    };
    std::set<SymbolSeq> seen;
    for (std::size_t p = 1; p <= period_max; ++p) {
        const auto pers = words(p);
        for (std::size_t m = 0; m <= preperiod_max; ++m)
            for (const auto& pre : words(m))
                for (const auto& per : pers) seen.emplace(pre, per, d);
    }
    return {seen.begin(), seen.end()};
}

Envelope::Envelope(const Potential& a, double lambda, std::vector<EnvelopePiece> pieces, EnvelopeOptions opt)
    : a_(a), lambda_(lambda), pieces_(std::move(pieces)), opt_(opt) {
    if (pieces_.empty()) throw std::invalid_argument("Envelope: no pieces");
}

std::vector<double> Envelope::switch_points() const {
    std::vector<double> s;
    for (std::size_t k = 0; k + 1 < pieces_.size(); ++k) s.push_back(pieces_[k].r);
    return s;
}

std::size_t Envelope::piece_at(double x) const {
    for (std::size_t k = 0; k < pieces_.size(); ++k)
        if (x <= pieces_[k].r) return k;
    return pieces_.size() - 1;
}

double Envelope::value(double x) const {
    return s_value(*a_, lambda_, x, pieces_[piece_at(x)].seq, opt_.tol, opt_.fixed_depth).value;
}

Envelope envelope(const Potential& a, double lambda, const std::vector<SymbolSeq>& cands, std::size_t n,
                  const EnvelopeOptions& opt) {
    if (cands.empty()) throw std::invalid_argument("envelope: empty candidate set");
    if (n < 2) throw std::invalid_argument("envelope: grid needs at least two nodes");
    std::vector<SymbolSeq> cs = cands;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    const double tt = opt.tie_tol.value_or(default_tie_tol(a));
    const std::size_t m = cs.size();

    auto node = [n](std::size_t j) { return static_cast<double>(j) / static_cast<double>(n); };
    std::vector<double> vals(m * n);
    std::vector<double> best(n, -INFINITY);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t j = 0; j < n; ++j) {
            vals[c * n + j] = s_value(a, lambda, node(j), cs[c], opt.tol, opt.fixed_depth).value;
            best[j] = std::max(best[j], vals[c * n + j]);
        }
    auto near_best = [&](std::size_t c, std::size_t j) { return vals[c * n + j] >= best[j] - tt; };

    struct Run {
        std::size_t c, j0, j1;  // inclusive node range
    };
    std::vector<Run> runs;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t arg = 0;
        for (std::size_t c = 0; c < m; ++c)
            if (near_best(c, j)) arg = c;  // largest index = lexicographically greatest
        if (!runs.empty() && runs.back().c == arg)
            runs.back().j1 = j;
        else
            runs.push_back({arg, j, j});
    }

    auto coalesce = [&runs] {
        std::vector<Run> out;
        for (const auto& r : runs) {
            if (!out.empty() && out.back().c == r.c)
                out.back().j1 = r.j1;
            else
                out.push_back(r);
        }
        runs = std::move(out);
    };
    auto ties_on = [&](std::size_t c, const Run& r) {
        for (std::size_t j = r.j0; j <= r.j1; ++j)
            if (!near_best(c, j)) return false;
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k < runs.size() && !changed; ++k) {
            if (k > 0 && ties_on(runs[k - 1].c, runs[k])) {
                runs[k].c = runs[k - 1].c;
                changed = true;
            } else if (k + 1 < runs.size() && ties_on(runs[k + 1].c, runs[k])) {
                runs[k].c = runs[k + 1].c;
                changed = true;
            }
        }
        if (changed) coalesce();
    }

    const double h = 1.0 / static_cast<double>(n);
    std::vector<EnvelopePiece> pieces;
    double left = 0.0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        double right = 1.0;
        if (k + 1 < runs.size()) {
            const std::size_t jl = runs[k].j1, jr = runs[k + 1].j0;
            const double lo = std::max(0.0, node(jl) - h);
            const double hi = std::min(1.0, node(jr) + h);
            try {
                right = crossing_point(a, lambda, cs[runs[k].c], cs[runs[k + 1].c], lo, hi, opt.tol);
            } catch (const NoCrossingError&) {
                right = 0.5 * (node(jl) + node(jr));
            }
        }
        pieces.push_back({cs[runs[k].c], left, right});
        left = right;
    }
    return Envelope(a, lambda, std::move(pieces), opt);
}

EnvelopeCheck validate_envelope(const Envelope& env, std::size_t n) {
    const auto& ps = env.pieces();
    if (ps.front().l != 0.0 || ps.back().r != 1.0) throw std::invalid_argument("envelope pieces do not cover [0,1]");
    for (std::size_t k = 0; k < ps.size(); ++k) {
        if (ps[k].l > ps[k].r) throw std::invalid_argument("envelope piece with reversed interval");
        if (k + 1 < ps.size() && ps[k].r != ps[k + 1].l) throw std::invalid_argument("coverage gap between pieces");
    }
    const Potential& a = *env.potential();
    const double lambda = env.lambda();
    const auto& opt = env.options();
    const int d = ps.front().seq.d();
    EnvelopeCheck out;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        double best = -INFINITY;
        for (int i = 0; i < d; ++i) {
            const double z = inverse_branch(i, x, d);
            best = std::max(best, lambda * env.value(z) + a(z));
        }
        out.calibration = std::max(out.calibration, std::abs(env.value(x) - best));

        const auto& pc = ps[env.piece_at(x)];
        if (x > pc.l && x < pc.r) {
            const double y = inverse_branch(pc.seq[0], x, d);
            const double sy = s_value(a, lambda, y, shift(pc.seq), opt.tol, opt.fixed_depth).value;
            out.invariance = std::max(out.invariance, std::abs(env.value(y) - sy));
        }
    }
    for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
        const double s = ps[k].r;
        const double g = s_value(a, lambda, s, ps[k].seq, opt.tol, opt.fixed_depth).value -
                         s_value(a, lambda, s, ps[k + 1].seq, opt.tol, opt.fixed_depth).value;
        out.switch_gap = std::max(out.switch_gap, std::abs(g));
    }
    return out;
}

SymmetricEnvelope symmetric_envelope(const Potential& a, double lambda, std::size_t samples) {
    if (!a.symmetric()) throw std::invalid_argument("symmetric_envelope: potential is not flagged symmetric");
    if (samples < 3) throw std::invalid_argument("symmetric_envelope: need at least three samples");
    const auto s10 = SymbolSeq::periodic({1, 0});
    const auto s01 = SymbolSeq::periodic({0, 1});
    SymmetricEnvelope out{Envelope(a, lambda, {{s10, 0.0, 0.5}, {s01, 0.5, 1.0}}), 0.0, true};
    for (std::size_t j = 0; j < samples; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(samples - 1);
        const double r = s_value(a, lambda, x, s10).value - s_value(a, lambda, 1.0 - x, s01).value;
        out.symmetry_residual = std::max(out.symmetry_residual, std::abs(r));
        if (j > 0 && j + 1 < samples && !(delta(a, lambda, x, s10, s01).deriv < 0.0)) out.twist_sampled = false;
    }
    return out;
}

Period3Result period3_condition(double u, double v) {
    if (!(0.0 < u && u < v && v < 1.0)) throw std::invalid_argument("period3_condition: need 0 < u < v < 1");
    auto fmt = [](double t) {
        std::string s = std::to_string(t);
        while (s.size() > 1 && s.back() == '0') s.pop_back();
        return s;
    };
    Period3Result r;
    r.anchor_bracketed = 3.0 / 7.0 <= u && u <= 5.0 / 7.0 && 5.0 / 7.0 <= v && v <= 6.0 / 7.0;
    const double t1u = (1.0 + u) / 2.0;
    if (!(0.5 >= u && t1u <= v)) {
        r.witness = "tau1[0,u] = [0.5, " + fmt(t1u) + "] is not inside [u,v]";
    } else if (!(t1u >= v)) {
        r.witness = "tau1[u,v] starts at " + fmt(t1u) + " < v";
    } else if (!(0.5 <= u)) {
        r.witness = "tau0[v,1] ends at 0.5 > u";
    } else {
        r.ok = true;
    }
    return r;
}

ConcavityResult concavity_check(const Potential& a, double lambda, const SymbolSeq& seq, std::size_t n,
                                double tol) {
    if (seq.d() != 2) throw UnsupportedError("concavity_check: d = 2 only");
    if (n < 2) throw std::invalid_argument("concavity_check: need at least two cells");
    const double span = 1.0 - 1e-9;
    std::vector<double> s(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        s[j] = s_value(a, lambda, span * static_cast<double>(j) / static_cast<double>(n), seq).value;
    ConcavityResult r;
    r.max_second_diff = -INFINITY;
    for (std::size_t j = 1; j < n; ++j) r.max_second_diff = std::max(r.max_second_diff, s[j - 1] - 2.0 * s[j] + s[j + 1]);
    r.concave = r.max_second_diff <= tol;
    r.strict = r.max_second_diff < -tol;
    return r;
}

}  // namespace fatbound
