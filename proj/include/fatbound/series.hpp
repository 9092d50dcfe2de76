#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fatbound/potentials.hpp"
#include "fatbound/symbolic.hpp"

namespace fatbound {

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;  // 0 when the periodic tail was summed in closed form
    std::size_t depth = 0;    // number of explicit terms
};

/// Number of terms used by the fixed-depth compatibility mode (terms k = 0..7).
inline constexpr std::size_t kLegacyDepth = 8;

/**
S(x,a) = sum_k lambda^k A(tau_{k,a} x).

Terms are summed until lambda^N ||A|| / (1 - lambda) <= tol, unless the orbit
reaches the attracting cycle of the periodic part first, in which case the
remaining geometric sum over the cycle is added exactly. With fixed_depth > 0
exactly that many terms are summed and the tail is bounded, never closed.

Points are taken in [0,1]; evaluations that land on 1 use the value just below 1.
*/
SeriesValue s_value(const Potential& a, double lambda, double x, const SymbolSeq& seq, double tol = 1e-12,
                    std::size_t fixed_depth = 0);

/// |S(Tx, pi(x) a) - A(x) - lambda S(x,a)|. Rejects x on a branch boundary i/d.
double s_cocycle_check(const Potential& a, double lambda, double x, const SymbolSeq& seq, double tol = 1e-12);

/// W(x,a) = S(x,a) - S(xbar,a).
SeriesValue w_value(const Potential& a, double lambda, double x, const SymbolSeq& seq, double xbar = 0.0,
                    double tol = 1e-12);

/// dS/dx = (1/d) sum_k (lambda/d)^k A'(tau_{k,a} x), truncated at tol.
SeriesValue s_deriv(const Potential& a, double lambda, double x, const SymbolSeq& seq, double tol = 1e-13);

struct DeltaValue {
    double value = 0.0;
    double deriv = 0.0;
    double tail_bound = 0.0;
};

/// Delta(x,a,b) = S(x,a) - S(x,b) and its x-derivative. The derivative is summed jointly,
/// so the common prefix of a and b cancels exactly.
DeltaValue delta(const Potential& a, double lambda, double x, const SymbolSeq& s1, const SymbolSeq& s2,
                 double tol = 1e-13);

/// Root of Delta(., s1, s2) in [lo, hi] by bisection to 1e-10. Throws NoCrossingError without a sign change.
double crossing_point(const Potential& a, double lambda, const SymbolSeq& s1, const SymbolSeq& s2, double lo = 0.0,
                      double hi = 1.0, double tol = 1e-13);

struct AngleBound {
    double lhs = 0.0;
    double rhs = 0.0;
    std::size_t n = 0;  // first differing digit
    bool ok = false;
};

/// |Delta'(x,a,b)| <= ||A'|| (lambda/2)^n 2/(2 - lambda). Requires a != b and d = 2.
AngleBound angle_bound_check(const Potential& a, double lambda, const SymbolSeq& s1, const SymbolSeq& s2, double x);

/// Canonical eventually periodic words with period <= period_max and preperiod <= preperiod_max,
/// sorted lexicographically.
std::vector<SymbolSeq> candidates(int d, std::size_t period_max, std::size_t preperiod_max);

struct EnvelopePiece {
    SymbolSeq seq;
    double l = 0.0;
    double r = 1.0;
};

struct EnvelopeOptions {
    double tol = 1e-12;                   // series tolerance
    std::optional<double> tie_tol;        // defaults to 1e-9 (1 + ||A||)
    std::size_t fixed_depth = 0;          // kLegacyDepth reproduces eight-term truncation
};

class Envelope {
public:
    Envelope() = default;
    Envelope(const Potential& a, double lambda, std::vector<EnvelopePiece> pieces, EnvelopeOptions opt = {});

    const std::vector<EnvelopePiece>& pieces() const noexcept { return pieces_; }
    std::vector<double> switch_points() const;

    /// Index of the piece covering x (left piece at a switch point).
    std::size_t piece_at(double x) const;

    /// S(x, a) for the covering piece.
    double value(double x) const;

    double lambda() const noexcept { return lambda_; }
    const std::optional<Potential>& potential() const noexcept { return a_; }
    const EnvelopeOptions& options() const noexcept { return opt_; }

private:
    std::optional<Potential> a_;
    double lambda_ = 0.0;
    std::vector<EnvelopePiece> pieces_;
    EnvelopeOptions opt_;
};

/**
Upper envelope of {S(., c) : c in cands} sampled at x_j = j/n, j < n.

Nodes take the argmax, with near ties going to the lexicographically greater
word. Runs that tie everywhere with a neighbouring run are merged into it,
and each remaining switch is refined by bisecting Delta over one grid cell on
either side of the change.
*/
Envelope envelope(const Potential& a, double lambda, const std::vector<SymbolSeq>& cands, std::size_t n,
                  const EnvelopeOptions& opt = {});

struct EnvelopeCheck {
    double calibration = 0.0;  // max |E(x) - max_i (lambda E(tau_i x) + A(tau_i x))|
    double invariance = 0.0;   // max over pieces of E(tau_{a0} x) - S(tau_{a0} x, sigma a)
    double switch_gap = 0.0;   // max |S(s, left) - S(s, right)| at switch points
};

/// Evaluates the envelope on the grid x_j = j/n, j <= n. Throws if pieces do not tile [0,1].
EnvelopeCheck validate_envelope(const Envelope& env, std::size_t n);

struct SymmetricEnvelope {
    Envelope env;
    double symmetry_residual = 0.0;  // max |S(x,(10)) - S(1-x,(01))|
    bool twist_sampled = false;      // Delta'(x,(10),(01)) < 0 at all samples
};

/// b = S(., (10)) on [0,1/2] and S(., (01)) on [1/2,1]. Rejects potentials not flagged symmetric.
SymmetricEnvelope symmetric_envelope(const Potential& a, double lambda, std::size_t samples = 1001);

struct Period3Result {
    bool ok = false;
    std::string witness;  // first violated inclusion, empty when ok
    bool anchor_bracketed = false;  // 3/7 in [0,u], 5/7 in [u,v], 6/7 in [v,1]
};

/// tau_1[0,u] in [u,v], tau_1[u,v] in [v,1], tau_0[v,1] in [0,u].
Period3Result period3_condition(double u, double v);

struct ConcavityResult {
    bool concave = false;
    bool strict = false;
    double max_second_diff = 0.0;  // undivided
};

/// Second differences of x -> S(x,a) on x_j = j/n over [0, 1 - 1e-9].
ConcavityResult concavity_check(const Potential& a, double lambda, const SymbolSeq& seq, std::size_t n = 512,
                                double tol = 1e-12);

}  // namespace fatbound
