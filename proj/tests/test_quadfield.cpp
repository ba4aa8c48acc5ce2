#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "dmf/quadfield.hpp"
#include "oracles.hpp"

using dmf::FieldContext;
using dmf::make_field;

TEST_CASE("fundamental unit matches the Pell oracle on the headline fields") {
    for (std::int64_t q : {13, 17, 29, 37, 41, 53}) {
        const auto F = make_field(q);
        const auto pell = oracle::pell_unit(q);
        INFO("q = " << q);
        CHECK(F.eps.a == pell.x);
        CHECK(F.eps.b == pell.y);
        CHECK(F.eps_norm == -1);
        CHECK(pell.norm == -1);
        CHECK(F.log_eps > 0.0);
    }
}

TEST_CASE("every whitelisted discriminant has a norm -1 unit") {
    for (std::int64_t q : {61, 73, 89, 97, 101, 109, 113, 137, 149, 157, 173,
                           181, 193, 197}) {
        const auto F = make_field(q);
        INFO("q = " << q);
        CHECK(F.eps_norm == -1);
    }
}

TEST_CASE("bad discriminants are rejected with the right rule") {
    CHECK_THROWS_WITH(make_field(12), Catch::Matchers::ContainsSubstring("prime"));
    CHECK_THROWS_WITH(make_field(15), Catch::Matchers::ContainsSubstring("prime"));
    CHECK_THROWS_WITH(make_field(19), Catch::Matchers::ContainsSubstring("1 mod 4"));
    CHECK_THROWS_WITH(make_field(5), Catch::Matchers::ContainsSubstring("exceed 8"));
    CHECK_THROWS_WITH(make_field(229), Catch::Matchers::ContainsSubstring("at most 200"));
}

TEST_CASE("character values and complete multiplicativity") {
    const auto F = make_field(13);
    CHECK(F.chi(13) == 0);
    CHECK(F.chi(3) == 1);   // 3 = 4^2 mod 13
    CHECK(F.chi(2) == -1);  // 13 = 5 mod 8
    for (std::int64_t m = 1; m <= 60; ++m)
        for (std::int64_t n = 1; n <= 60; ++n) {
            INFO(m << " * " << n);
            REQUIRE(F.chi(m * n) == F.chi(m) * F.chi(n));
        }
}

TEST_CASE("ideal counts equal the divisor-sum convolution up to 10^4") {
    const auto F = make_field(13);
    const auto chi = oracle::chi_table_mod(13);
    const auto counts = dmf::ideal_counts_by_norm(F, 10'000);
    for (std::int64_t n = 1; n <= 10'000; ++n) {
        INFO("n = " << n);
        REQUIRE(counts[static_cast<std::size_t>(n)] ==
                oracle::ideal_count_divisor_sum(13, n, chi));
    }
}

TEST_CASE("canonical generators: reduction is idempotent and unit-invariant") {
    const auto F = make_field(13);
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<std::int64_t> coef(-1000, 1000);
    int tested = 0;
    while (tested < 100) {
        dmf::QuadInt v{coef(rng), coef(rng)};
        if (v.a == 0 && v.b == 0) continue;
        ++tested;
        const auto r = F.canonicalize(v);
        CHECK(F.canonicalize(r) == r);
        // multiplying by any unit +-eps^n lands on the same representative
        auto w = v;
        for (int n = 0; n < 3; ++n) w = F.mul(w, F.eps);
        CHECK(F.canonicalize(w) == r);
        CHECK(F.canonicalize(FieldContext::neg(v)) == r);
    }
}

TEST_CASE("enumeration is sorted and conjugation-symmetric") {
    const auto F = make_field(13);
    const auto ideals = dmf::enumerate_ideals(F, 500);
    for (std::size_t i = 1; i < ideals.size(); ++i) {
        const bool sorted =
            ideals[i - 1].norm_abs < ideals[i].norm_abs ||
            (ideals[i - 1].norm_abs == ideals[i].norm_abs &&
             ideals[i - 1].angle < ideals[i].angle);
        REQUIRE(sorted);
    }
    // every nonzero angle has its mirror at the same norm
    for (const auto& r : ideals) {
        const double t = r.angle;
        if (std::abs(t) < 1e-12) continue;
        if (std::abs(t - F.log_eps) < 1e-12)
            continue;  // +log eps pairs with itself across the cut
        const bool found = std::any_of(
            ideals.begin(), ideals.end(), [&](const dmf::IdealRep& s) {
                return s.norm_abs == r.norm_abs && std::abs(s.angle + t) < 1e-9;
            });
        INFO("norm " << r.norm_abs << " angle " << t);
        REQUIRE(found);
    }
}

TEST_CASE("small enumeration matches the handworked table") {
    const auto F = make_field(13);
    CHECK(F.eps.a == 1);
    CHECK(F.eps.b == 1);  // (3 + sqrt 13)/2 = 1 + omega
    const auto ideals = dmf::enumerate_ideals(F, 3);
    REQUIRE(ideals.size() == 3);
    CHECK(ideals[0].norm_abs == 1);
    CHECK_THAT(ideals[0].angle, Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK(ideals[0].norm_positive);  // class A1
    CHECK(ideals[1].norm_abs == 3);
    CHECK(ideals[2].norm_abs == 3);
    CHECK_FALSE(ideals[1].norm_positive);  // class A2
    const double t = std::log((1.0 + std::sqrt(13.0)) / (std::sqrt(13.0) - 1.0));
    CHECK_THAT(ideals[2].angle, Catch::Matchers::WithinAbs(t, 1e-12));
    CHECK_THAT(ideals[1].angle, Catch::Matchers::WithinAbs(-t, 1e-12));
}
