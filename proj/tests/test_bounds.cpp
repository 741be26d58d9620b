#include <catch_amalgamated.hpp>

#include <cmath>

#include "energylab/bounds.hpp"
#include "testutil.hpp"

using namespace energylab;

TEST_CASE("radziwill_rhs degenerate weight") {
    // w = indicator{1}: T_2 = 1, norms 1, inner log 0, so both forms equal
    // N * exp(2 log2 log2 N) = N * (log2 N)^(2/ln 2).
    const WeightNorms norms{1.0, 1.0, 1.0};
    const RadziwillRhs r = radziwill_rhs(1024, norms, 1, 1.0);
    const double expected = 1024.0 * std::pow(std::log2(1024.0), 2.0 / std::log(2.0));
    CHECK(r.t_form == Catch::Approx(expected).epsilon(1e-12));
    CHECK(r.l1_form == Catch::Approx(expected).epsilon(1e-12));
    CHECK(r.norms_consistent);
}

TEST_CASE("radziwill_rhs with the constant switched off") {
    const WeightNorms norms{3.0, 1.5, 40.0};
    const RadziwillRhs r = radziwill_rhs(100, norms, 2, 0.0);
    const double loglog = std::log2(std::log2(100.0));
    CHECK(r.t_form == Catch::Approx(100.0 * 2.25 * std::exp(2 * loglog)).epsilon(1e-12));
    CHECK(r.l1_form == r.t_form);
}

TEST_CASE("radziwill_rhs monotone in T_{s+1}") {
    double prev = 0;
    for (double t : {2.0, 4.0, 8.0, 64.0, 1024.0}) {
        const RadziwillRhs r = radziwill_rhs(5000, {5.0, 1.2, t}, 1, 1.0);
        REQUIRE(r.t_form > prev);
        prev = r.t_form;
    }
}

TEST_CASE("radziwill_rhs flags inconsistent norms") {
    // T_2 below l2^4 cannot occur for real weights; the evaluator flags it.
    const RadziwillRhs r = radziwill_rhs(100, {1.0, 2.0, 1.0}, 1, 1.0);
    CHECK(!r.norms_consistent);
    CHECK_THROWS_AS(radziwill_rhs(2, {1, 1, 1}, 1, 1.0), domain_error);
    CHECK_THROWS_AS(radziwill_rhs(100, {0, 1, 1}, 1, 1.0), domain_error);
}

TEST_CASE("weight_norms satisfy the power-mean relation") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const Weight w = testutil::random_weight(83, i, 10, 50);
        for (int s : {1, 2}) {
            const WeightNorms n = weight_norms(w, s);
            REQUIRE(n.t_next >= std::pow(n.l2, 2.0 * (s + 1)) * (1 - 1e-9));
            bool ok = true;
            detail::inner_log(n, s, ok);
            REQUIRE(ok);
        }
    }
}

TEST_CASE("pz_rhs degenerate exponent") {
    // T_{s+1} = l2^(2(s+1)) makes the exponent zero: value z^(2a) l2^2.
    const WeightNorms norms{2.0, 1.5, std::pow(1.5, 4.0)};
    const PzRhs r = pz_rhs(9, norms, 1, 1.0, 1.0);
    CHECK(r.value == Catch::Approx(81.0 * 2.25).epsilon(1e-12));
    CHECK(r.condition_l);
}

TEST_CASE("pz_rhs and eps variant coincide at eps=1, alpha=1") {
    const WeightNorms norms{4.0, 1.7, 30.0};
    const PzRhs a = pz_rhs(25, norms, 2, 1.0, 0.7);
    const PzRhs b = pz_rhs_eps(25, norms, 2, 1.0, 0.7);
    CHECK(a.value == Catch::Approx(b.value).epsilon(1e-12));
}

TEST_CASE("pz_rhs hypothesis flag") {
    // log2(T l2^(-2(s+1))) > s z / log2 z must flip the flag.
    const double huge_t = std::pow(2.0, 40.0);
    const PzRhs r = pz_rhs(8, {3.0, 1.0, huge_t}, 1, 0.75, 1.0);
    CHECK(!r.condition_l); // 40 > 8/3
    const PzRhs ok = pz_rhs(1000, {3.0, 1.0, 8.0}, 1, 0.75, 1.0);
    CHECK(ok.condition_l);
}

TEST_CASE("ap_in_g_check") {
    const ApInGCheck c = ap_in_g_check(10000, 128, 0.1);
    CHECK(c.condition_holds); // 7 <= 0.1 * 10000 / log2(10000) ~ 75.3
    CHECK(c.lhs == Catch::Approx(7.0));
    CHECK(c.prime_count == 1229); // pi(10^4)

    const ApInGCheck zero = ap_in_g_check(10000, 2, 0.0);
    CHECK(!zero.condition_holds);

    // threshold scales linearly in |S|
    const ApInGCheck s1 = ap_in_g_check(100, 64, 0.2);
    const ApInGCheck s2 = ap_in_g_check(100, 128, 0.2);
    CHECK(s2.threshold == Catch::Approx(2.0 * s1.threshold));

    CHECK_THROWS_AS(ap_in_g_check(2, 4, 0.1), domain_error);
}

TEST_CASE("tl_rhs") {
    CHECK(tl_rhs(64, 2, 0.0) == Catch::Approx(std::pow(64.0, 8.0)));
    CHECK(tl_rhs_exponent(64, 2, 0.0) == Catch::Approx(8.0));
    CHECK(tl_rhs_exponent(64, 2, 1.5) == Catch::Approx(8.0 - 1.5));
    // decreasing in c
    CHECK(tl_rhs(32, 3, 2.0) < tl_rhs(32, 3, 0.5));
    CHECK_THROWS_AS(tl_rhs(1, 2, 1.0), domain_error);
}

TEST_CASE("t_as_rhs and witness fraction") {
    CHECK(t_as_rhs(256, 0.0, 1.0) == Catch::Approx(std::exp(8.0)));
    CHECK(t_as_rhs(256, 0.1, 0.0) == Catch::Approx(1.0));
    CHECK(t_as_witness_fraction(256, 0.0, 1.0) == Catch::Approx(std::exp(-8.0)));
    CHECK_THROWS_AS(t_as_rhs(256, 0.2, 1.0), domain_error); // alpha >= 1/6
}

TEST_CASE("inc_rhs and ef_rhs") {
    CHECK(inc_rhs(64, 100, 100, 0.0) == Catch::Approx(6400.0));
    CHECK(inc_rhs(64, 100, 100, 0.5) == Catch::Approx(640.0));
    CHECK(inc_rhs(64, 100, 400, 0.0) == Catch::Approx(12800.0));
    CHECK(ef_rhs(64, 100, 0.0) == Catch::Approx(409600.0));
    CHECK(ef_rhs(64, 100, 1.0) == Catch::Approx(4096.0));
    CHECK_THROWS_AS(inc_rhs(1, 100, 100, 0.0), domain_error);
}

TEST_CASE("product_growth_rhs") {
    CHECK(product_growth_rhs(16, 1, 1.0) == Catch::Approx(1.0)); // log2(1) = 0
    CHECK(product_growth_rhs(16, 2, 1.0) == Catch::Approx(16.0));
    CHECK(product_growth_rhs(16, 2, 2.0) == Catch::Approx(256.0));
}

TEST_CASE("c_alpha") {
    CHECK(c_alpha(0.75) == Catch::Approx(4.5));
    CHECK_THROWS_AS(c_alpha(0.5), domain_error);
    CHECK_THROWS_AS(c_alpha(1.0), domain_error);
}

TEST_CASE("make_report ratio") {
    const BoundReport r = make_report(5.0, 20.0, {{"C", 1.0}}, {{"cond", true}});
    CHECK(r.ratio == Catch::Approx(0.25));
    const BoundReport z = make_report(5.0, 0.0);
    CHECK(std::isnan(z.ratio));
}
