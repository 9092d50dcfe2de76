#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fatbound/potentials.hpp"

namespace fatbound {

/// Branch index floor(d x); x = i/d belongs to branch i.
int digit(double x, int d = 2);

struct AttractorCloud {
    std::vector<double> xs;
    std::vector<double> ss;
    std::size_t burn_in = 0;
    double lambda = 0.0;
    int d = 2;
    std::uint64_t seed = 0;
    std::string potential;
    bool bounded = true;  // |s_k| <= ||A||/(1 - lambda) + lambda^k |s0| held throughout

    std::size_t size() const noexcept { return xs.size(); }
};

struct IterateOptions {
    int d = 2;
    double x0 = 0.41421356237309503;  // sqrt(2) - 1
    double s0 = 0.0;
    std::size_t n = 4000;
    std::size_t burn_in = 50;
    std::uint64_t seed = 1;
    std::size_t restarts = 0;  // extra orbits from uniform random x, each with its own burn-in
};

/**
Forward orbit of F(x,s) = (Tx, lambda s + A(x)).

x is carried as a 64-bit fixed-point angle. Each step multiplies by d mod 2^64
and fills the vacated low digit from the seeded generator, so the orbit keeps
its resolution instead of collapsing to 0 after ~52 doublings. Of the n
iterates of each orbit the first burn_in are discarded.
*/
AttractorCloud iterate_F(const Potential& a, double lambda, const IterateOptions& opt = {});

struct BoundaryBin {
    double center = 0.0;
    double smax = 0.0;      // NaN when the bin is empty
    double x_at_max = 0.0;  // x of the point attaining smax
    std::size_t count = 0;
};

/// Per-bin maximum of s. Throws when every bin is empty.
std::vector<BoundaryBin> upper_boundary(const AttractorCloud& cloud, std::size_t bins);

/// Runs (x0,s) and (x0,t), s <= t, along the same x-orbit; true when s_k <= t_k at every step.
bool fiber_order_check(const Potential& a, double lambda, double s, double t, const IterateOptions& opt = {});

}  // namespace fatbound
