#include <cmath>

#include "doctest.h"
#include "fatbound/error.hpp"
#include "fatbound/symbolic.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fatbound;

namespace {
SymbolSeq P(std::vector<Digit> per) { return SymbolSeq::periodic(std::move(per)); }
}  // namespace

TEST_SUITE("symbolic") {

TEST_CASE("lex_compare examples") {
    CHECK(lex_compare(P({0}), P({1})) == std::strong_ordering::less);
    CHECK(lex_compare(P({1, 0}), SymbolSeq({1, 0}, {1, 0})) == std::strong_ordering::equal);
    CHECK(lex_compare(P({1, 0}), P({1})) == std::strong_ordering::less);
    CHECK_THROWS(lex_compare(P({1}), SymbolSeq({}, {1}, 3)));
}

TEST_CASE("canonical form") {
    const SymbolSeq a({1, 0, 1, 0}, {1, 0, 1, 0});
    CHECK(a.preperiod().empty());
    CHECK(a.period() == std::vector<Digit>{1, 0});
    CHECK(SymbolSeq({0}, {1, 0}) == P({0, 1}));
    CHECK(SymbolSeq::parse("0|10") == P({0, 1}));
    CHECK(SymbolSeq::parse("0|01").to_string() == "0|01");
    CHECK_THROWS(SymbolSeq({}, {}));
    CHECK_THROWS(SymbolSeq({}, {2}));
    CHECK_THROWS(SymbolSeq::parse("10"));
}

TEST_CASE("shift and concat") {
    CHECK(shift(P({1, 0})) == P({0, 1}));
    CHECK(shift(SymbolSeq({0}, {1, 0})) == P({1, 0}));
    CHECK(shift(P({1})) == P({1}));
    CHECK(concat(1, P({0, 1})) == P({1, 0}));
    // 0 (10)^inf is the word 0101..., stored canonically as (01)^inf
    const auto c = concat(0, P({1, 0}));
    CHECK(c == SymbolSeq({0}, {1, 0}));
    CHECK(c == P({0, 1}));
    CHECK(concat(0, SymbolSeq::parse("1|0")).to_string() == "01|0");
    CHECK(concat(0, P({0})) == P({0}));
    CHECK_THROWS(concat(2, P({0})));
}

TEST_CASE("branch_compose examples") {
    CHECK(branch_compose(0, P({1}), 0.0) == doctest::Approx(0.5));
    CHECK(branch_compose(2, SymbolSeq({1, 0, 1}, {0}), 0.0) == doctest::Approx(5.0 / 8.0));
    CHECK(branch_compose(1, P({0}), 1.0) == doctest::Approx(0.25));
}

TEST_CASE("psi examples") {
    const auto a = P({1, 0});
    CHECK(psi(0, a) == doctest::Approx(0.5));
    CHECK(psi(1, a) == doctest::Approx(0.25));
    CHECK(psi(2, a) == doctest::Approx(5.0 / 8.0));
    CHECK_THROWS_AS(psi(0, SymbolSeq({}, {2}, 3)), UnsupportedError);
}

TEST_CASE("preimage levels are branch compositions") {
    // preimages of 0 along 1 0 1 0 ...: 1/2, 1/4, 5/8, ...; even level m sits at (2^{m+2} - 1) / (3 2^{m+1})
    for (int m : {2, 6}) {
        const double level = (std::ldexp(1.0, m + 2) - 1.0) / (3.0 * std::ldexp(1.0, m + 1));
        CHECK(branch_compose(static_cast<std::size_t>(m), P({1, 0}), 0.0) == doctest::Approx(level).epsilon(1e-15));
    }
    // along 1 1 0 1 0 ...: 1/2, 3/4, 3/8, 11/16, ...; odd level m at (2^{m+2} + 1) / (3 2^{m+1})
    for (int m : {1, 3, 7}) {
        const double level = (std::ldexp(1.0, m + 2) + 1.0) / (3.0 * std::ldexp(1.0, m + 1));
        CHECK(branch_compose(static_cast<std::size_t>(m), SymbolSeq::parse("1|10"), 0.0) ==
              doctest::Approx(level).epsilon(1e-15));
    }
}

TEST_CASE("z_value examples") {
    for (double l : {0.2, 0.51, 0.9}) {
        CHECK(z_value(P({0}), l) == 0.0);
        CHECK(z_value(P({1}), l) == doctest::Approx(2.0 / (2.0 - l)).epsilon(1e-14));
        CHECK(z_value(P({1, 0}), l) == doctest::Approx(4.0 / (4.0 - l * l)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(z_value(SymbolSeq({}, {2}, 3), 0.5), UnsupportedError);
}

TEST_CASE("property: canonicalization idempotent") {
    gen::Rng r(101);
    for (int t = 0; t < 500; ++t) {
        const auto a = gen::symbol_seq(r, 4, 3);
        const SymbolSeq again(a.preperiod(), a.period(), a.d());
        CHECK(again == a);
        CHECK(SymbolSeq::parse(a.to_string()) == a);
    }
}

TEST_CASE("property: lex order agrees with expanded words") {
    gen::Rng r(102);
    std::vector<SymbolSeq> words;
    for (int t = 0; t < 120; ++t) words.push_back(gen::symbol_seq(r));
    for (const auto& a : words)
        for (const auto& b : words) {
            const auto ea = oracle::expand(a, 64), eb = oracle::expand(b, 64);
            const auto expect = ea <=> eb;
            REQUIRE(lex_compare(a, b) == expect);
        }
}

TEST_CASE("property: branch_compose equals x/2^{k+1} + psi") {
    gen::Rng r(103);
    for (int t = 0; t < 200; ++t) {
        const auto a = gen::symbol_seq(r, 4, 3);
        const double x = r.uniform(0, 1);
        for (std::size_t k = 0; k <= 40; ++k)
            REQUIRE(std::abs(branch_compose(k, a, x) - (std::ldexp(x, -static_cast<int>(k) - 1) + psi(k, a))) <= 1e-14);
    }
}

TEST_CASE("property: z_value matches direct summation") {
    gen::Rng r(104);
    for (int t = 0; t < 200; ++t) {
        const auto a = gen::symbol_seq(r, 4, 3);
        const double l = r.uniform(0.01, 0.99);
        REQUIRE(std::abs(z_value(a, l) - static_cast<double>(oracle::z_sum(a, l))) <= 1e-13);
    }
}

}  // TEST_SUITE
