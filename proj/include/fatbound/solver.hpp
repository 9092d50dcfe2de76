#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fatbound/grid.hpp"
#include "fatbound/potentials.hpp"
#include "fatbound/symbolic.hpp"

namespace fatbound {

struct SolveOptions {
    int d = 2;
    std::size_t n = 4096;
    double tol = 1e-10;
    long max_iter = 1'000'000;
    int jobs = 1;
};

struct SolveReport {
    GridFunction b;
    long iterations = 0;
    double final_residual = 0.0;
    double lambda = 0.0;
    int d = 2;
    std::string potential;
};

/**
Discounted Bellman operator on the grid,
  (L v)(x_j) = max_i A(tau_i x_j) + lambda * v(tau_i x_j),
with v interpolated at the off-grid preimages. Potential values and stencils
are precomputed once, so repeated application costs O(n d).
*/
class BellmanOperator {
public:
    BellmanOperator(const Potential& a, double lambda, int d, std::size_t n, int jobs = 1);

    GridFunction apply(const GridFunction& v) const;
    void apply_into(const GridFunction& v, GridFunction& out) const;

    double lambda() const noexcept { return lambda_; }
    int d() const noexcept { return d_; }
    std::size_t size() const noexcept { return n_; }

private:
    double lambda_;
    int d_;
    std::size_t n_;
    int jobs_;
    std::vector<double> a_;       // A(tau_i x_j), index j * d + i
    std::vector<Stencil> st_;     // stencil of tau_i x_j, same indexing
};

GridFunction bellman_apply(const GridFunction& v, const Potential& a, double lambda, int d = 2, int jobs = 1);

/// Value iteration from v = 0; stops once successive iterates differ by at most tol (1 - lambda) / lambda.
SolveReport solve_subaction(const Potential& a, double lambda, const SolveOptions& opt = {});

/// || b_{A'} - (b_A + g / lambda) ||_inf for A' = A + (g o T) / lambda - g.
double coboundary_shift_check(const Potential& a, const RealFn& g, double lambda, const SolveOptions& opt = {});

/// R(z) = b(T z) - lambda b(z) - A(z) at every node. Nonnegative up to discretisation error.
GridFunction rate_function(const GridFunction& b, const Potential& a, double lambda, int d = 2);

/// R at an arbitrary point.
double rate_at(const GridFunction& b, const Potential& a, double lambda, double z, int d = 2);

/// Branch gap (lambda b + A)(tau_1 x) - (lambda b + A)(tau_0 x) at every node (d = 2).
GridFunction gap_function(const GridFunction& b, const Potential& a, double lambda);

double gap_at(const GridFunction& b, const Potential& a, double lambda, double x);

/// 1e-9 (1 + ||A||_inf).
double default_tie_tol(const Potential& a);

struct TurningPoints {
    std::vector<double> points;
    bool degenerate = false;
    std::size_t count() const noexcept { return points.size(); }
};

/// Zeros of the gap function, bracketed on the grid and bisected to 1e-8.
TurningPoints turning_points(const GridFunction& b, const Potential& a, double lambda,
                             std::optional<double> tie_tol = std::nullopt);

struct Realizer {
    std::vector<Digit> digits;          // greedy itinerary, digit k maps point k to point k+1
    std::vector<bool> tied;             // more than one branch within tie_tol at step k
    std::vector<double> points;         // backward orbit, points[0] = x0
    std::optional<SymbolSeq> seq;       // set once the visited points recur
    bool all_tied = false;
};

/**
Greedy backward itinerary: at each step picks the branch maximising
lambda b(tau_i y) + A(tau_i y). Ties go to the larger digit. Runs at least 128
steps so that recurrence of the orbit can be detected; `digits` holds `depth`
entries.
*/
Realizer realizer(const GridFunction& b, const Potential& a, double lambda, double x0, std::size_t depth,
                  std::optional<double> tie_tol = std::nullopt, int d = 2);

/**
Points where the greedy itinerary changes: consecutive nodes x_j = j/n whose
depth-digit realizer prefixes differ are bisected to 1e-8. Nodes with a tie
in the prefix are skipped. Besides the turning points this picks up their
forward images, where a later digit switches.
*/
std::vector<double> realizer_change_points(const GridFunction& b, const Potential& a, double lambda,
                                           std::size_t n = 1024, std::size_t depth = 12,
                                           std::optional<double> tie_tol = std::nullopt);

/// Index j in [k - window, k) with circle distance |p_k - p_j| <= tol, searching nearest first.
std::optional<std::size_t> find_recurrence(std::span<const double> points, std::size_t k, double tol = 1e-9,
                                           std::size_t window = 64);

struct PeriodicOrbit {
    std::vector<double> points;  // sorted
    std::size_t period = 0;
};

struct EmpiricalMeasure {
    std::vector<double> histogram;  // visit frequencies, sums to 1
    std::optional<PeriodicOrbit> orbit;
    bool degenerate = false;
    std::size_t steps = 0;
};

EmpiricalMeasure empirical_measure(const GridFunction& b, const Potential& a, double lambda, double x0,
                                   std::size_t n_steps, std::size_t bins = 64,
                                   std::optional<double> tie_tol = std::nullopt, int d = 2);

struct SweepRow {
    double lambda = 0.0;
    double max_b = 0.0;
    double scaled = 0.0;  // (1 - lambda) max b
    long iterations = 0;
    bool slow = false;    // lambda close to 1, contraction is weak
};

std::vector<SweepRow> lambda_sweep(const Potential& a, std::span<const double> lambdas, const SolveOptions& opt = {});

}  // namespace fatbound
