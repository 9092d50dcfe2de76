#include <cmath>

#include "doctest.h"
#include "fatbound/attractor.hpp"
#include "fatbound/solver.hpp"

using namespace fatbound;

TEST_SUITE("attractor") {

TEST_CASE("digit examples") {
    CHECK(digit(0.3) == 0);
    CHECK(digit(0.75) == 1);
    CHECK(digit(0.5) == 1);
    CHECK(digit(0.999999, 3) == 2);
    CHECK(digit(1.0) == 0);  // 1 is the point 0 of the circle
}

TEST_CASE("iterate_F examples") {
    IterateOptions opt;
    opt.s0 = 1.0;
    opt.burn_in = 0;
    opt.n = 60;
    const auto zero = iterate_F(constant(0.0), 0.5, opt);
    REQUIRE(zero.size() == 60);
    for (std::size_t k = 0; k < zero.size(); ++k) CHECK(zero.ss[k] == doctest::Approx(std::pow(0.5, k)));

    opt.s0 = -7.0;
    opt.n = 200;
    const auto one = iterate_F(constant(1.0), 0.5, opt);
    CHECK(one.ss.back() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(one.bounded);
}

TEST_CASE("x orbit keeps its resolution") {
    IterateOptions opt;
    opt.n = 4000;
    const auto c = iterate_F(quad_sym(), 0.51, opt);
    std::size_t small = 0;
    for (double x : c.xs) small += x < 1e-6 ? 1 : 0;
    CHECK(small < 5);
    double mean = 0.0;
    for (double x : c.xs) mean += x;
    CHECK(mean / static_cast<double>(c.size()) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("determinism and restarts") {
    IterateOptions opt;
    opt.n = 500;
    opt.seed = 9;
    const auto a = iterate_F(sine(), 0.51, opt), b = iterate_F(sine(), 0.51, opt);
    CHECK(a.xs == b.xs);
    CHECK(a.ss == b.ss);
    opt.restarts = 2;
    CHECK(iterate_F(sine(), 0.51, opt).size() == 3 * (500 - opt.burn_in));
}

TEST_CASE("upper_boundary examples") {
    IterateOptions opt;
    opt.n = 3000;
    const auto zero = iterate_F(constant(0.0), 0.5, opt);
    for (const auto& bin : upper_boundary(zero, 16))
        if (bin.count) CHECK(std::abs(bin.smax) <= 1e-12);

    const auto b = solve_subaction(quad_sym(), 0.51).b;
    opt.n = 4000;
    const auto cloud = iterate_F(quad_sym(), 0.51, opt);
    for (const auto& bin : upper_boundary(cloud, 10)) {
        if (!bin.count) {
            CHECK(std::isnan(bin.smax));
            continue;
        }
        CHECK(bin.smax <= b(bin.x_at_max) + 5e-3);
    }
    AttractorCloud empty;
    CHECK_THROWS(upper_boundary(empty, 4));
}

TEST_CASE("property: one-sided bound holds for every point") {
    const double l = 0.51;
    const auto b = solve_subaction(sine(), l).b;
    const double slack = 1e-10 + sine().lipschitz() / 4096.0 / (1.0 - l);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        IterateOptions opt;
        opt.seed = seed;
        const auto c = iterate_F(sine(), l, opt);
        for (std::size_t k = 0; k < c.size(); ++k) REQUIRE(c.ss[k] <= b(c.xs[k]) + slack);
    }
}

TEST_CASE("property: fibre order preserved") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        IterateOptions opt;
        opt.seed = seed;
        CHECK(fiber_order_check(quad_sym(), 0.51, -1.0, 0.5, opt));
        CHECK(fiber_order_check(tent(), 0.9, 0.0, 0.0, opt));
    }
}

}  // TEST_SUITE
