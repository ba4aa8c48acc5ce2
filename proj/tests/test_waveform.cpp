#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dmf/quadfield.hpp"
#include "dmf/waveform.hpp"

using dmf::make_field;
using dmf::make_form;

namespace {
const dmf::FieldContext& field13() {
    static const auto F = make_field(13);
    return F;
}
}  // namespace

TEST_CASE("domain assembly reproduces the surface volume") {
    CHECK_THAT(dmf::domain_volume(13),
               Catch::Matchers::WithinRel(14.0 * M_PI / 3.0, 1e-10));
    CHECK_THAT(dmf::domain_volume(17),
               Catch::Matchers::WithinRel(18.0 * M_PI / 3.0, 1e-10));
}

TEST_CASE("periodicity and evenness of the evaluator") {
    const auto h = make_form(field13(), 3, 0.058);
    const double y = 0.83;
    for (double x : {0.1, 0.37, 0.49}) {
        // x + 1.0 is not exactly representable for these x, so the reduced
        // argument differs by one ulp; negation is exact.
        CHECK_THAT(h.eval(x + 1.0, y),
                   Catch::Matchers::WithinAbs(h.eval(x, y), 5e-13));
        CHECK(h.eval(-x, y) == h.eval(x, y));
        CHECK_THAT(h.eval(x + 3.0, y),
                   Catch::Matchers::WithinAbs(h.eval(x, y), 5e-13));
    }
}

TEST_CASE("automorphy under explicit level-13 elements") {
    const auto& F = field13();
    // with c = 13 the image height is y / |13 z + d|^2 <= 1 / (169 y), so the
    // form needs a floor well below the 0.058 default to evaluate both sides
    const auto h = make_form(F, 6, 0.0015);
    // gamma = [a b; c d], 13 | c, det 1; phi(gamma z) = chi(d) phi(z)
    struct { std::int64_t a, b, c, d; } gs[] = {
        {1, 0, 13, 1}, {1, 1, 13, 14}, {2, 1, 13, 7}, {3, -1, 13, -4},
        {-4, -1, 13, 3}};
    const std::complex<double> z(0.21, 0.9);
    const double ref = h.eval(z.real(), z.imag());
    for (const auto& g : gs) {
        REQUIRE(g.a * g.d - g.b * g.c == 1);
        const auto w = dmf::apply_mobius({g.a, g.b, g.c, g.d}, z);
        const double lhs = h.eval(w.real(), w.imag());
        const double rhs = F.chi(g.d) * ref;
        INFO("gamma = [" << g.a << " " << g.b << "; " << g.c << " " << g.d << "]");
        REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-8));
    }
}

TEST_CASE("level involution preserves absolute value") {
    // w = -1/(13 z) maps the surface to itself up to the dual form; for
    // these self-dual forms |phi| matches after the variable swap z -> w/13
    const auto h = make_form(field13(), 4, 0.002);
    for (const auto& [x, y] : {std::pair{0.13, 0.95}, {0.31, 1.4}, {0.02, 2.1}}) {
        const std::complex<double> z(x, y);
        const std::complex<double> w = -1.0 / (13.0 * z);
        const double a = std::abs(h.eval(w.real(), w.imag()));
        const double b = std::abs(h.eval(x, y));
        INFO("z = " << x << " + " << y << "i");
        REQUIRE_THAT(a, Catch::Matchers::WithinAbs(b, 1e-8));
    }
}

TEST_CASE("frozen norm and scan values at small k") {
    const auto h2 = make_form(field13(), 2, 0.058);
    CHECK_THAT(dmf::l2_norm_numeric(h2),
               Catch::Matchers::WithinRel(4.7204935242, 1e-8));
    const auto r = dmf::supnorm_scan(h2);
    CHECK_THAT(r.sup_ratio / std::pow(h2.T, 0.375),
               Catch::Matchers::WithinRel(0.348234902682147, 1e-9));
    CHECK(r.sup_raw > 0.0);
    CHECK(r.l2_norm > 0.0);
    CHECK_THAT(r.sup_raw / r.l2_norm,
               Catch::Matchers::WithinRel(r.sup_ratio, 1e-12));
}

TEST_CASE("evaluation guards") {
    const auto h = make_form(field13(), 2, 0.058);
    // below the configured floor the series would need more terms than the
    // table holds; the evaluator reports rather than truncating silently
    CHECK_THROWS_WITH(h.eval(0.0, 0.01),
                      Catch::Matchers::ContainsSubstring("table too short"));
    CHECK_THROWS(make_form(field13(), 0, 0.058));
    CHECK_THROWS(make_form(field13(), 2, 0.0));
}

TEST_CASE("truncation length tracks the Bessel cutoff") {
    const double T = 10.0;
    const std::int64_t n1 = dmf::truncation_length(T, 0.5, 1e-10);
    const std::int64_t n2 = dmf::truncation_length(T, 0.25, 1e-10);
    CHECK(n2 >= 2 * n1 - 1);  // halving y doubles the needed length
    CHECK(n1 >= 3);
}
