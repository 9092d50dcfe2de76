#include <cmath>

#include "doctest.h"
#include "fatbound/error.hpp"
#include "fatbound/scenarios.hpp"
#include "fatbound/series.hpp"
#include "fatbound/solver.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fatbound;

namespace {

constexpr double kL = 0.51;
const SymbolSeq s10 = SymbolSeq::periodic({1, 0});
const SymbolSeq s01 = SymbolSeq::periodic({0, 1});

double brute(const Potential& a, double l, double x, const SymbolSeq& s) {
    return static_cast<double>(oracle::series(a, l, x, s));
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("s_value examples") {
    CHECK(s_value(constant(1.0), kL, 0.3, s10).value == doctest::Approx(1.0 / (1.0 - kL)).epsilon(1e-12));
    CHECK(std::abs(s_value(quad_sym(), kL, 0.0, s10).value - oracle::s0_10_quad_sym(kL)) <= 1e-12);
    CHECK(std::abs(s_value(quad_sym(), kL, 0.0, s10).value + 0.044259) <= 1e-6);
    // the orbit of 1/3 under (10)^inf is exactly the 2-cycle
    const auto on_cycle = s_value(quad_sym(), kL, 1.0 / 3.0, s10);
    CHECK(on_cycle.value == doctest::Approx(-1.0 / (36.0 * (1.0 - kL))).epsilon(1e-12));
    CHECK(on_cycle.tail_bound == 0.0);
    // (01)^inf from 1/3 leaves the cycle first
    CHECK(std::abs(s_value(quad_sym(), kL, 1.0 / 3.0, s01).value - brute(quad_sym(), kL, 1.0 / 3.0, s01)) <= 1e-12);
}

TEST_CASE("fixed-depth mode sums exactly eight terms") {
    const auto v = s_value(quad_sym(), kL, 0.2, s10, 1e-12, kLegacyDepth);
    CHECK(v.depth == kLegacyDepth);
    CHECK(v.tail_bound > 0.0);
    double direct = 0.0, y = 0.2, w = 1.0;
    for (std::size_t k = 0; k < kLegacyDepth; ++k) {
        y = (y + s10[k]) / 2.0;
        direct += w * quad_sym()(y);
        w *= kL;
    }
    CHECK(v.value == doctest::Approx(direct).epsilon(1e-15));
    CHECK(std::abs(v.value - brute(quad_sym(), kL, 0.2, s10)) <= v.tail_bound);
}

TEST_CASE("property: s_value matches the brute-force oracle") {
    gen::Rng r(301);
    for (int t = 0; t < 300; ++t) {
        const auto a = gen::potential(r);
        const double l = r.uniform(0.05, 0.95);
        const auto s = gen::symbol_seq(r, 4, 3);
        const double x = r.uniform(0, 1);
        REQUIRE(std::abs(s_value(a, l, x, s).value - brute(a, l, x, s)) <= 1e-10);
    }
}

TEST_CASE("s_cocycle_check examples") {
    CHECK(s_cocycle_check(quad_sym(), kL, 0.3, s10) <= 1e-8);
    CHECK(s_cocycle_check(constant(2.0), kL, 0.3, s10) <= 1e-12);
    CHECK(s_cocycle_check(tent(), kL, 0.7, SymbolSeq::periodic({0})) <= 1e-8);
    CHECK_THROWS(s_cocycle_check(quad_sym(), kL, 0.5, s10));
}

TEST_CASE("w_value examples") {
    CHECK(w_value(quad_sym(), kL, 0.37, s10, 0.37).value == 0.0);
    CHECK(std::abs(w_value(constant(1.0), kL, 0.8, s01).value) <= 1e-14);
    const double w = w_value(quad_sym(), kL, 0.5, s10).value;
    CHECK(std::abs(w - oracle::w_half_10_quad_sym(kL)) <= 1e-10);
    CHECK(std::abs(w + 0.0425233) <= 1e-6);
}

TEST_CASE("s_deriv examples") {
    CHECK(s_deriv(polynomial({0.0, 1.0}), kL, 0.4, s01).value == doctest::Approx(1.0 / (2.0 - kL)).epsilon(1e-12));
    CHECK(s_deriv(constant(1.0), kL, 0.4, s01).value == 0.0);
    CHECK(std::abs(s_deriv(quad_sym(), kL, 0.3, s10).value -
                   static_cast<double>(oracle::series_deriv(quad_sym(), kL, 0.3L, s10))) <= 1e-12);
}

TEST_CASE("delta examples") {
    const auto same = delta(quad_sym(), kL, 0.3, s10, s10);
    CHECK(same.value == 0.0);
    CHECK(same.deriv == 0.0);
    CHECK(std::abs(delta(quad_sym(), kL, 0.5, s10, s01).value) <= 1e-8);
    const double slope = -(2.0 / (4.0 - kL)) * (z_value(s10, kL) - z_value(s01, kL));
    for (double x : {0.05, 0.3, 0.5, 0.9}) {
        const auto dv = delta(quad_sym(), kL, x, s10, s01);
        CHECK(dv.deriv == doctest::Approx(slope).epsilon(1e-12));
        CHECK(dv.deriv < 0.0);
    }
}

TEST_CASE("crossing_point examples") {
    CHECK(crossing_point(quad_sym(), kL, s10, s01) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK_THROWS_AS(crossing_point(quad_sym(), kL, s10, s10), NoCrossingError);
    CHECK_THROWS_AS(crossing_point(quad_sym(), kL, s10, s01, 0.0, 0.3), NoCrossingError);
    const auto env = envelope(quad_drift(), kL, candidates(2, 2, 1), 4096);
    REQUIRE(env.pieces().size() == 3);
    const double v = crossing_point(quad_drift(), kL, s01, SymbolSeq::parse("0|01"), 0.5, 1.0);
    CHECK(v > 0.5);
    CHECK(v < 1.0);
    CHECK(v == doctest::Approx(env.switch_points()[1]).epsilon(1e-8));
}

TEST_CASE("angle_bound_check examples") {
    const auto ab = angle_bound_check(quad_sym(), kL, s10, s01, 0.3);
    CHECK(ab.n == 0);
    CHECK(ab.rhs == doctest::Approx(2.0 / (2.0 - kL)).epsilon(1e-9));
    CHECK(ab.ok);
    const SymbolSeq a({1, 0, 1, 0, 1, 0, 1, 0, 1, 0}, {0});
    const SymbolSeq b({1, 0, 1, 0, 1, 0, 1, 0, 1, 0}, {1});
    const auto far = angle_bound_check(quad_sym(), kL, a, b, 0.3);
    CHECK(far.n == 10);
    CHECK(far.rhs == doctest::Approx(ab.rhs * std::pow(kL / 2.0, 10)).epsilon(1e-9));
    const auto flat = angle_bound_check(constant(1.0), kL, s10, s01, 0.3);
    CHECK(flat.lhs == 0.0);
    CHECK(flat.rhs == 0.0);
    CHECK(flat.ok);
}

TEST_CASE("candidates examples") {
    const auto c1 = candidates(2, 1, 0);
    CHECK(c1 == std::vector<SymbolSeq>{SymbolSeq::periodic({0}), SymbolSeq::periodic({1})});
    const auto c2 = candidates(2, 2, 0);
    CHECK(c2.size() == 4);
    CHECK(std::find(c2.begin(), c2.end(), s01) != c2.end());
    CHECK(std::find(c2.begin(), c2.end(), s10) != c2.end());
    const auto c3 = candidates(2, 2, 1);
    CHECK(std::find(c3.begin(), c3.end(), SymbolSeq::parse("0|10")) != c3.end());
    CHECK(std::find(c3.begin(), c3.end(), SymbolSeq::parse("0|01")) != c3.end());
    CHECK(std::find(c3.begin(), c3.end(), SymbolSeq::parse("1|01")) != c3.end());
    CHECK(std::is_sorted(c3.begin(), c3.end()));
    CHECK(std::adjacent_find(c3.begin(), c3.end()) == c3.end());
}

TEST_CASE("envelope examples") {
    const auto env = envelope(quad_sym(), kL, candidates(2, 3, 2), 4096);
    REQUIRE(env.pieces().size() == 2);
    CHECK(env.pieces()[0].seq == s10);
    CHECK(env.pieces()[1].seq == s01);
    CHECK(env.switch_points()[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(env.piece_at(env.switch_points()[0]) == 0);
    CHECK(env.piece_at(0.5 + 1e-6) == 1);

    const auto drift = envelope(quad_drift(), kL, candidates(2, 2, 1), 4096);
    REQUIRE(drift.pieces().size() == 3);
    CHECK(drift.pieces()[0].seq == s10);
    CHECK(drift.pieces()[1].seq == s01);
    CHECK(drift.pieces()[2].seq == SymbolSeq::parse("0|01"));

    const auto flat = envelope(constant(1.0), kL, candidates(2, 2, 1), 256);
    REQUIRE(flat.pieces().size() == 1);
    CHECK(flat.pieces()[0].seq == candidates(2, 2, 1).back());
}

TEST_CASE("validate_envelope examples") {
    const auto env = envelope(quad_sym(), kL, candidates(2, 3, 2), 4096);
    CHECK(validate_envelope(env, 4096).calibration <= 1e-8);
    const Envelope swapped(quad_sym(), kL, {{s01, 0.0, 0.5}, {s10, 0.5, 1.0}});
    CHECK(validate_envelope(swapped, 4096).calibration > 1e-3);
    const Envelope gap(quad_sym(), kL, {{s10, 0.0, 0.4}, {s01, 0.5, 1.0}});
    CHECK_THROWS(validate_envelope(gap, 256));
    const Envelope flat(constant(1.0), kL, {{s10, 0.0, 1.0}});
    CHECK(validate_envelope(flat, 256).calibration <= 1e-12);
}

TEST_CASE("property: envelope dominates candidates and matches the solver") {
    for (const auto& sc : scenarios()) {
        if (!sc.pieces) continue;
        CAPTURE(sc.name);
        const auto a = sc.make_potential();
        const auto cands = candidates(2, sc.period_max, sc.preperiod_max);
        const auto env = envelope(a, sc.lambda, cands, 1024);
        for (int j = 0; j < 1024; j += 7) {
            const double x = j / 1024.0;
            const double e = env.value(x);
            for (const auto& c : cands) REQUIRE(e >= s_value(a, sc.lambda, x, c).value - 1e-9);
        }
        const auto rep = solve_subaction(a, sc.lambda);
        const double bound = 1e-10 + 1e-12 + a.lipschitz() / 4096.0 / (1.0 - sc.lambda);
        double gap = 0.0;
        for (std::size_t j = 0; j < rep.b.size(); ++j)
            gap = std::max(gap, std::abs(env.value(rep.b.node(j)) - rep.b[j]));
        CHECK(gap <= bound);
    }
}

TEST_CASE("property: twist transversality over candidate pairs") {
    const auto words = candidates(2, 3, 2);
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            int changes = 0, last = 0;
            for (int k = 0; k <= 400; ++k) {
                const double dv = delta(quad_sym(), kL, (1.0 - 1e-9) * k / 400.0, words[i], words[j]).value;
                const int s = dv > 1e-12 ? 1 : (dv < -1e-12 ? -1 : 0);
                if (s && last && s != last) ++changes;
                if (s) last = s;
            }
            REQUIRE(changes <= 1);
        }
}

TEST_CASE("property: piece words are lexicographically decreasing in x") {
    for (const auto& sc : scenarios()) {
        if (!sc.pieces) continue;
        const auto env = envelope(sc.make_potential(), sc.lambda, candidates(2, sc.period_max, sc.preperiod_max), 1024);
        for (std::size_t k = 1; k < env.pieces().size(); ++k) CHECK(env.pieces()[k].seq < env.pieces()[k - 1].seq);
    }
}

TEST_CASE("symmetric_envelope examples") {
    const auto se = symmetric_envelope(quad_sym(), kL);
    REQUIRE(se.env.pieces().size() == 2);
    CHECK(se.env.switch_points()[0] == 0.5);
    CHECK(se.symmetry_residual <= 1e-12);
    CHECK(se.twist_sampled);
    const auto cs = symmetric_envelope(cosine(), kL);
    CHECK(cs.env.pieces()[0].seq == s10);
    CHECK(validate_envelope(cs.env, 4096).calibration <= 1e-8);
    CHECK_THROWS(symmetric_envelope(parse_potential("sine"), kL));
}

TEST_CASE("period3_condition examples") {
    const auto ok = period3_condition(0.5, 0.75);
    CHECK(ok.ok);
    CHECK(ok.witness.empty());
    CHECK(ok.anchor_bracketed);
    const auto bad = period3_condition(0.45, 0.73);
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness.find("0.725") != std::string::npos);
    CHECK_THROWS(period3_condition(0.8, 0.2));
}

TEST_CASE("concavity_check examples") {
    const auto c = concavity_check(quad_sym(), kL, s10);
    CHECK(c.concave);
    CHECK(c.strict);
    CHECK(c.max_second_diff < 0.0);
    const auto lin = concavity_check(polynomial({0.0, 1.0}), kL, s10);
    CHECK(std::abs(lin.max_second_diff) <= 1e-12);
    CHECK_FALSE(lin.strict);
    CHECK_FALSE(concavity_check(polynomial({0.25, -1.0, 1.0}), kL, s10).concave);
}

}  // TEST_SUITE
