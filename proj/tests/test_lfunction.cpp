#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dmf/coeff.hpp"
#include "dmf/lfunction.hpp"
#include "dmf/quadfield.hpp"

using dmf::AfeOptions;
using dmf::afe_lvalue;
using dmf::afe_required_nmax;
using dmf::make_coeff_table;
using dmf::make_field;

namespace {
dmf::LValueResult central(std::int64_t k, const AfeOptions& opt = {}) {
    const auto F = make_field(13);
    const auto nmax = afe_required_nmax(F, k, 0.0, opt);
    const auto tbl = make_coeff_table(F, k, nmax);
    return afe_lvalue(F, tbl, 0.0, opt);
}
}  // namespace

TEST_CASE("frozen central values") {
    const auto v1 = central(1);
    CHECK_THAT(v1.value.real(), Catch::Matchers::WithinAbs(1.47896892, 2e-8));
    CHECK_THAT(v1.value.imag(), Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(v1.omega, Catch::Matchers::WithinAbs(1.0, 1e-9));

    const auto v2 = central(2);
    CHECK_THAT(v2.value.real(),
               Catch::Matchers::WithinAbs(1.20412217938558, 1e-10));

    const auto v4 = central(4);
    CHECK_THAT(v4.value.real(), Catch::Matchers::WithinAbs(5.33296467, 2e-8));
    CHECK_THAT(v4.omega, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("value is stable under smoothing swap and longer series") {
    const auto base = central(2);
    AfeOptions gswap;
    gswap.gauss_scale = 2.0;
    const auto swapped = central(2, gswap);
    AfeOptions longer;
    longer.length_scale = 2.0;
    const auto doubled = central(2, longer);
    CHECK_THAT(swapped.value.real(),
               Catch::Matchers::WithinAbs(base.value.real(), 1e-8));
    CHECK_THAT(doubled.value.real(),
               Catch::Matchers::WithinAbs(base.value.real(), 1e-8));
}

TEST_CASE("reflection symmetry along the critical line") {
    // self-dual form: L(1/2 + it) and L(1/2 - it) are conjugates
    const auto F = make_field(13);
    const AfeOptions opt;
    const double t = 0.3;
    const auto nmax = afe_required_nmax(F, 3, t, opt);
    const auto tbl = make_coeff_table(F, 3, nmax);
    const auto up = afe_lvalue(F, tbl, t, opt);
    const auto dn = afe_lvalue(F, tbl, -t, opt);
    CHECK_THAT(up.value.real(),
               Catch::Matchers::WithinAbs(dn.value.real(), 1e-8));
    CHECK_THAT(up.value.imag(),
               Catch::Matchers::WithinAbs(-dn.value.imag(), 1e-8));
    CHECK(std::abs(up.value.imag()) > 1e-6);  // genuinely off-center
}

TEST_CASE("family second moment equals the mean of individual values") {
    const auto F = make_field(13);
    const AfeOptions opt;
    const auto m = dmf::second_moment(F, 4, 0.0, opt, 1);
    REQUIRE(m.per_k.size() == 4);
    double acc = 0.0;
    for (const auto& [k, lsq] : m.per_k) {
        const auto solo = central(k);
        const double direct = std::norm(solo.value);
        INFO("k = " << k);
        CHECK_THAT(lsq, Catch::Matchers::WithinRel(direct, 1e-9));
        acc += lsq;
    }
    CHECK_THAT(m.average, Catch::Matchers::WithinRel(acc / 4.0, 1e-12));
}

TEST_CASE("series-length guard") {
    const auto F = make_field(13);
    const auto tbl = make_coeff_table(F, 1, 50);  // far too short
    CHECK_THROWS_WITH(afe_lvalue(F, tbl, 0.0, {}),
                      Catch::Matchers::ContainsSubstring("too short"));
}

TEST_CASE("offset domain guard") {
    const auto F = make_field(13);
    const AfeOptions opt;
    const auto nmax = afe_required_nmax(F, 1, 0.0, opt);
    const auto tbl = make_coeff_table(F, 1, nmax);
    CHECK_THROWS(afe_lvalue(F, tbl, 10.0, opt));  // |t| > T/2
}
