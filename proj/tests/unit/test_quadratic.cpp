#include <cmath>

#include "doctest.h"
#include "fatbound/error.hpp"
#include "fatbound/quadratic.hpp"
#include "fatbound/series.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fatbound;

namespace {
constexpr double kL = 0.51;
const SymbolSeq s10 = SymbolSeq::periodic({1, 0});
const SymbolSeq s01 = SymbolSeq::periodic({0, 1});
}  // namespace

TEST_SUITE("quadratic") {

TEST_CASE("construction") {
    CHECK_THROWS(QuadraticSpec(0, 0, -1, 1.0));
    CHECK_THROWS(QuadraticSpec(0, 0, -1, 0.0));
    const auto q = QuadraticSpec::from_potential(quad_sym(), kL);
    CHECK(q.c0 == -0.25);
    CHECK(q.c1 == 1.0);
    CHECK(q.c2 == -1.0);
    CHECK_THROWS(QuadraticSpec::from_potential(cosine(), kL));
    CHECK_THROWS(QuadraticSpec::from_potential(polynomial({0, 0, 0, 1}), kL));
}

TEST_CASE("closed_s_deriv examples") {
    CHECK(closed_s_deriv({0, 1, 0, kL}, 0.7, s01) == doctest::Approx(1.0 / (2.0 - kL)));
    CHECK(closed_s_deriv({0, 0, 0, kL}, 0.7, s01) == 0.0);
    const QuadraticSpec q(-0.25, 1, -1, kL);
    CHECK(std::abs(closed_s_deriv(q, 0.3, s10) - s_deriv(quad_sym(), kL, 0.3, s10).value) <= 1e-9);
}

TEST_CASE("property: closed derivative equals the series derivative") {
    gen::Rng r(401);
    for (int t = 0; t < 100; ++t) {
        const auto g = gen::quadratic(r);
        const QuadraticSpec q(g.c0, g.c1, g.c2, g.lambda);
        const auto s = gen::symbol_seq(r);
        const double x = r.uniform(0.0, 1.0 - 1e-9);
        REQUIRE(std::abs(closed_s_deriv(q, x, s) - static_cast<double>(oracle::series_deriv(q.potential(), q.lambda, x, s))) <= 1e-9);
    }
}

TEST_CASE("twist_predicate examples") {
    CHECK(twist_predicate({-0.25, 1, -1, kL}));
    CHECK_FALSE(twist_predicate({0, 0, 1, kL}));
    const QuadraticSpec affine(0.3, 0.5, 0, kL);
    CHECK_FALSE(twist_predicate(affine));
    const auto words = candidates(2, 2, 1);
    for (const auto& a : words)
        for (const auto& b : words) CHECK(std::abs(delta(affine.potential(), kL, 0.4, a, b).deriv) <= 1e-14);
}

TEST_CASE("property: twist sign for c2 < 0") {
    gen::Rng r(402);
    for (int t = 0; t < 200; ++t) {
        const auto g = gen::quadratic(r, true);
        const auto a = polynomial({g.c0, g.c1, g.c2});
        auto s1 = gen::symbol_seq(r), s2 = gen::symbol_seq(r);
        if (s1 == s2) continue;
        if (s1 < s2) std::swap(s1, s2);  // s1 > s2
        for (int k = 0; k < 5; ++k) REQUIRE(delta(a, g.lambda, r.uniform(0, 1), s1, s2).deriv < 0.0);
    }
}

TEST_CASE("closed_crossing examples") {
    const QuadraticSpec q(-0.25, 1, -1, kL);
    const auto c = closed_crossing(q, s10, s01);
    CHECK(c.x == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(c.inside);
    CHECK_THROWS_AS(closed_crossing(q, s10, s10), NoCrossingError);
    CHECK_THROWS_AS(closed_crossing({0, 1, 0, kL}, s10, s01), NoCrossingError);
    const auto out = closed_crossing(q, SymbolSeq::periodic({1}), s10);
    CHECK_FALSE(out.inside);
    CHECK_THROWS_AS(crossing_point(quad_sym(), kL, SymbolSeq::periodic({1}), s10), NoCrossingError);
}

TEST_CASE("property: closed crossing agrees with bisection") {
    gen::Rng r(403);
    int compared = 0;
    for (int t = 0; t < 300; ++t) {
        const auto g = gen::quadratic(r, true);
        const QuadraticSpec q(g.c0, g.c1, g.c2, g.lambda);
        const auto s1 = gen::symbol_seq(r), s2 = gen::symbol_seq(r);
        if (s1 == s2) continue;
        const auto cc = closed_crossing(q, s1, s2);
        if (!cc.inside || cc.x < 1e-6 || cc.x > 1 - 1e-6) continue;
        ++compared;
        REQUIRE(std::abs(crossing_point(q.potential(), q.lambda, s1, s2) - cc.x) <= 1e-8);
    }
    CHECK(compared > 20);
}

TEST_CASE("explicit_symmetric_subaction") {
    const auto sub = explicit_symmetric_subaction(kL);
    CHECK(std::abs(sub.b0 + 0.044259) <= 1e-6);
    CHECK(sub.b0_printed == doctest::Approx(-0.059408).epsilon(1e-5));
    CHECK(sub.mismatch);
    CHECK(sub.piece10[2] == doctest::Approx(-1.0 / (4.0 - kL)));
    CHECK(sub.piece01[2] == doctest::Approx(-1.0 / (4.0 - kL)));
    auto poly = [](const std::array<double, 3>& c, double x) { return c[0] + c[1] * x + c[2] * x * x; };
    CHECK(poly(sub.piece01, 0.5) - poly(sub.piece01, 0.0) ==
          doctest::Approx((6.0 + kL) / (4.0 * (4.0 - kL) * (2.0 + kL))).epsilon(1e-12));
    for (double x : {0.0, 0.2, 0.5}) CHECK(poly(sub.piece10, x) == doctest::Approx(s_value(quad_sym(), kL, x, s10).value).epsilon(1e-12));
    for (double x : {0.5, 0.8, 0.999}) CHECK(poly(sub.piece01, x) == doctest::Approx(s_value(quad_sym(), kL, x, s01).value).epsilon(1e-12));
    CHECK(sub.b_half == doctest::Approx(poly(sub.piece10, 0.5)));
}

TEST_CASE("explicit subaction passes envelope validation") {
    const Envelope env(quad_sym(), kL, {{s10, 0.0, 0.5}, {s01, 0.5, 1.0}});
    CHECK(validate_envelope(env, 4096).calibration <= 1e-8);
}

}  // TEST_SUITE
