#include "fatbound/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace fatbound {

namespace {

constexpr double kTwo64 = 18446744073709551616.0;

std::uint64_t to_angle(double x) {
    const double u = wrap_unit(x) * kTwo64;
    return u >= kTwo64 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(u);
}

double from_angle(std::uint64_t v) { return static_cast<double>(v) / kTwo64; }

// x -> d x mod 1 with a fresh low digit
std::uint64_t advance(std::uint64_t v, int d, std::mt19937_64& rng) {
    const auto dd = static_cast<std::uint64_t>(d);
    return v * dd + rng() % dd;
}

void check(double lambda, const IterateOptions& opt) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
    if (opt.d < 2) throw std::invalid_argument("branch count d must be at least 2");
    if (opt.n <= opt.burn_in) throw std::invalid_argument("iterate_F: need n > burn_in");
}

}  // namespace

int digit(double x, int d) {
    const int i = static_cast<int>(std::floor(d * wrap_unit(x)));
    return std::clamp(i, 0, d - 1);
}

AttractorCloud iterate_F(const Potential& a, double lambda, const IterateOptions& opt) {
    check(lambda, opt);
    AttractorCloud cloud;
    cloud.burn_in = opt.burn_in;
    cloud.lambda = lambda;
    cloud.d = opt.d;
    cloud.seed = opt.seed;
    cloud.potential = a.name();
    const std::size_t keep = (opt.n - opt.burn_in) * (opt.restarts + 1);
    cloud.xs.reserve(keep);
    cloud.ss.reserve(keep);

    std::mt19937_64 rng(opt.seed);
    const double bound = a.sup_norm() / (1.0 - lambda);
    for (std::size_t orbit = 0; orbit <= opt.restarts; ++orbit) {
        std::uint64_t v = orbit == 0 ? to_angle(opt.x0) : rng();
        double s = opt.s0;
        double decay = 1.0;  // lambda^k
        for (std::size_t k = 0; k < opt.n; ++k) {
            const double x = from_angle(v);
            if (k >= opt.burn_in) {
                cloud.xs.push_back(x);
                cloud.ss.push_back(s);
            }
            if (std::abs(s) > bound + decay * std::abs(opt.s0) + 1e-12 * (1.0 + bound)) cloud.bounded = false;
            s = lambda * s + a(x);
            decay *= lambda;
            v = advance(v, opt.d, rng);
        }
    }
    return cloud;
}

std::vector<BoundaryBin> upper_boundary(const AttractorCloud& cloud, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("upper_boundary: need at least two bins");
    std::vector<BoundaryBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].center = (static_cast<double>(b) + 0.5) / static_cast<double>(bins);
        out[b].smax = std::numeric_limits<double>::quiet_NaN();
    }
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        const auto b = std::min(bins - 1, static_cast<std::size_t>(cloud.xs[k] * static_cast<double>(bins)));
        auto& bin = out[b];
        if (bin.count == 0 || cloud.ss[k] > bin.smax) {
            bin.smax = cloud.ss[k];
            bin.x_at_max = cloud.xs[k];
        }
        ++bin.count;
    }
    if (std::all_of(out.begin(), out.end(), [](const BoundaryBin& b) { return b.count == 0; }))
        throw std::invalid_argument("upper_boundary: every bin is empty");
    return out;
}

bool fiber_order_check(const Potential& a, double lambda, double s, double t, const IterateOptions& opt) {
    check(lambda, opt);
    if (s > t) std::swap(s, t);
    std::mt19937_64 rng(opt.seed);
    std::uint64_t v = to_angle(opt.x0);
    for (std::size_t k = 0; k < opt.n; ++k) {
        const double ax = a(from_angle(v));
        s = lambda * s + ax;
        t = lambda * t + ax;
        if (s > t) return false;
        v = advance(v, opt.d, rng);
    }
    return true;
}

}  // namespace fatbound
