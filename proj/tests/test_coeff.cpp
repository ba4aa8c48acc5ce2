#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "dmf/coeff.hpp"
#include "dmf/quadfield.hpp"
#include "oracles.hpp"

using dmf::make_coeff_table;
using dmf::make_field;

TEST_CASE("normalization and a frozen eigenvalue") {
    const auto F = make_field(13);
    const auto tbl = make_coeff_table(F, 1, 100);
    CHECK(tbl(1) == 1.0);
    // two norm-3 ideals at angles +-t give a_1(3) = 2 cos(pi t / log eps)
    CHECK_THAT(tbl(3), Catch::Matchers::WithinAbs(0.145876906397295, 1e-14));
    CHECK(tbl(2) == 0.0);  // inert prime, no ideals of norm 2
}

TEST_CASE("Hecke multiplicativity across coprime pairs") {
    const auto F = make_field(13);
    const auto tbl = make_coeff_table(F, 3, 10'000);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> pick(1, 100);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t m = pick(rng), n = pick(rng);
        if (std::gcd(m, n) != 1) continue;
        INFO("m = " << m << " n = " << n);
        REQUIRE_THAT(tbl(m * n),
                     Catch::Matchers::WithinAbs(tbl(m) * tbl(n), 1e-10));
    }
}

TEST_CASE("prime-power recursion") {
    const auto F = make_field(13);
    const auto tbl = make_coeff_table(F, 2, 10'000);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19}) {
        for (std::int64_t pw = p; pw * p <= 10'000 / p; pw *= p) {
            const double lhs = tbl(pw * p);
            const double rhs =
                tbl(p) * tbl(pw) -
                F.chi(p) * (pw == p ? 1.0 : tbl(pw / p));
            INFO("p = " << p << " power " << pw * p);
            REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-10));
        }
    }
}

TEST_CASE("symmetric-square identity links k and 2k") {
    const auto F = make_field(13);
    for (std::int64_t k = 1; k <= 4; ++k) {
        const auto tk = make_coeff_table(F, k, 250);
        const auto t2k = make_coeff_table(F, 2 * k, 250);
        for (std::int64_t p : {2, 3, 5, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43,
                               47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
            INFO("k = " << k << " p = " << p);
            REQUIRE_THAT(tk(p) * tk(p),
                         Catch::Matchers::WithinAbs(
                             1.0 + F.chi(p) + t2k(p), 1e-11));
        }
    }
}

TEST_CASE("ramified prime squares multiplicatively") {
    const auto F = make_field(13);
    const auto tbl = make_coeff_table(F, 5, 2500);
    CHECK_THAT(tbl(13 * 13),
               Catch::Matchers::WithinAbs(tbl(13) * tbl(13), 1e-12));
    CHECK_THAT(std::abs(tbl(13)), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("divisor-count envelope") {
    const auto F = make_field(13);
    const auto tbl = make_coeff_table(F, 4, 5000);
    for (std::int64_t n = 1; n <= 5000; ++n) {
        INFO("n = " << n);
        REQUIRE(std::abs(tbl(n)) <=
                static_cast<double>(oracle::divisor_count(n)) + 1e-9);
    }
}

TEST_CASE("shared enumeration agrees with per-k construction") {
    const auto F = make_field(13);
    const std::vector<std::int64_t> ks{1, 2, 3, 4};
    const auto tables = dmf::make_coeff_tables(F, ks, 3000);
    REQUIRE(tables.size() == 4);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto solo = make_coeff_table(F, ks[i], 3000);
        for (std::int64_t n = 1; n <= 3000; ++n)
            REQUIRE(tables[i](n) == solo(n));
    }
}

TEST_CASE("spectral parameter ladder") {
    const auto F = make_field(13);
    const double L = F.log_eps;
    for (std::int64_t k = 1; k <= 12; ++k)
        CHECK_THAT(dmf::spectral_parameter(F, k),
                   Catch::Matchers::WithinRel(M_PI * k / L, 1e-14));
}
