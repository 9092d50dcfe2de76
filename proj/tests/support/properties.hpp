#pragma once

#include <cstdint>
#include <string>

namespace props {

struct Outcome {
    bool ok = true;
    std::size_t cases = 0;
    std::string detail;  // first counterexample, or a summary line
};

/// ||L v - L w|| <= lambda ||v - w|| for random v, w, potentials, discounts and grids.
Outcome contraction(std::uint64_t seed, int trials = 200);

/// v <= w node-wise implies L v <= L w node-wise.
Outcome bellman_monotone(std::uint64_t seed, int trials = 200);

/// Delta(., a, b) changes sign at most once on [0,1] for quadratics with c2 < 0.
Outcome twist_single_crossing(std::uint64_t seed, int trials = 300);

/// a < b lexicographically implies Z(b) - Z(a) >= (lambda/2)^n (1 - lambda)/(1 - lambda/2).
Outcome z_strictly_increasing(std::uint64_t seed, int lambdas = 20);

/// A'' < 0 makes x -> S(x,a) strictly concave; a convex A is reported non-concave.
Outcome concavity_propagation(std::uint64_t seed, int trials = 60);

/// For every preset with a known piece structure, pieces map into pieces under (x,a) -> (tau_{a0} x, sigma a).
Outcome envelope_invariance(std::uint64_t seed, int samples_per_piece = 40);

}  // namespace props
