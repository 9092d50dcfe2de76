#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fatbound/grid.hpp"
#include "fatbound/potentials.hpp"
#include "fatbound/symbolic.hpp"

namespace fatbound {

/**
Dual side of the kernel: S(xbar, .) with a per-word cache.

b*(c) = -S(xbar, c) and A*(c) = S(xbar, c) - lambda S(xbar, sigma c), which is
A(tau_{c0} x) + lambda W(tau_{c0} x, sigma c) - W(x, c) for every x. Moving xbar
changes A* by a lambda-coboundary. Safe to share between threads.
*/
class DualEval {
public:
    DualEval(Potential a, double lambda, double xbar = 0.0, double tol = 1e-12);

    double s_bar(const SymbolSeq& c) const;
    double s(double x, const SymbolSeq& c) const;

    const Potential& potential() const noexcept { return a_; }
    double lambda() const noexcept { return lambda_; }
    double xbar() const noexcept { return xbar_; }
    double tol() const noexcept { return tol_; }

private:
    Potential a_;
    double lambda_;
    double xbar_;
    double tol_;
    struct Cache {
        std::mutex mu;
        std::map<SymbolSeq, double> values;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();  // copies share the cache
};

double dual_potential(const DualEval& de, const SymbolSeq& c);

double dual_subaction(const DualEval& de, const SymbolSeq& c);

/// |lambda b*(sigma c) - b*(c) - A*(c)|, which vanishes for b* = -S(xbar, .).
double dual_identity_residual(const DualEval& de, const SymbolSeq& c);

/// p(x,a) = b(x) - S(x,a) = (b* + b - W)(x,a).
double admissibility_gap(const GridFunction& b, const DualEval& de, double x, const SymbolSeq& a);

/// |R(tau_{a0} x) - p(x,a) + lambda p(tau_{a0} x, sigma a)|.
double fundamental_relation_residual(const GridFunction& b, const DualEval& de, double x, const SymbolSeq& a);

struct PlanStep {
    double x;
    SymbolSeq a;
    double p;
};

struct PlanOrbit {
    std::vector<PlanStep> steps;
    double p_max = 0.0;
    std::optional<std::size_t> period;
    double cost_lhs = 0.0;  // mean of -W over the orbit (one period when periodic)
    double cost_rhs = 0.0;  // mean(-b*) + mean(-b) over the same points
};

/// Iterates (x,a) -> (tau_{a0} x, sigma a) n times from an optimal pair.
/// Throws std::invalid_argument when p(x0,a0) > tol.
PlanOrbit plan_orbit(const DualEval& de, const GridFunction& b, double x0, const SymbolSeq& a0, std::size_t n,
                     double tol = 1e-6);

struct Monotonicity {
    bool ok = true;
    bool skipped = false;      // every sample tied
    std::string orientation;   // "decreasing", "increasing", "constant" or "skipped"
    std::size_t switches = 0;
    std::vector<double> violations;
};

/// Realizer prefixes on x_j = j/n are lexicographically monotone in x.
/// Samples with a tie anywhere in the prefix are left out.
Monotonicity realizer_monotonicity(const GridFunction& b, const Potential& a, double lambda, std::size_t n = 256,
                                   std::size_t depth = 12);

}  // namespace fatbound
