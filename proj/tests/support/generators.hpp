#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fatbound/potentials.hpp"
#include "fatbound/symbolic.hpp"

namespace gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline fatbound::SymbolSeq symbol_seq(Rng& r, int period_max = 3, int pre_max = 2, int d = 2) {
    std::vector<fatbound::Digit> pre(static_cast<std::size_t>(r.integer(0, pre_max)));
    std::vector<fatbound::Digit> per(static_cast<std::size_t>(r.integer(1, period_max)));
    for (auto& x : pre) x = static_cast<fatbound::Digit>(r.integer(0, d - 1));
    for (auto& x : per) x = static_cast<fatbound::Digit>(r.integer(0, d - 1));
    return {pre, per, d};
}

inline std::vector<double> values(Rng& r, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = r.uniform(lo, hi);
    return v;
}

struct Quad {
    double c0, c1, c2, lambda;
};

/// Random quadratic potential and discount; c2 < 0 when twist is requested.
inline Quad quadratic(Rng& r, bool twist = false) {
    Quad q{r.uniform(-1.0, 1.0), r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0), r.uniform(0.1, 0.95)};
    if (twist) q.c2 = -r.uniform(0.05, 2.0);
    return q;
}

/// One of the shipped potentials or a random quadratic.
inline fatbound::Potential potential(Rng& r) {
    switch (r.integer(0, 4)) {
        case 0: return fatbound::quad_sym();
        case 1: return fatbound::tent();
        case 2: return fatbound::cosine();
        case 3: return fatbound::sine();
        default: {
            const auto q = quadratic(r);
            return fatbound::polynomial({q.c0, q.c1, q.c2});
        }
    }
}

}  // namespace gen
