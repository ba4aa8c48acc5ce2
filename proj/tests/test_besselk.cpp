#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dmf/besselk.hpp"
#include "dmf/highprec.hpp"

using dmf::scaled_besselk;

TEST_CASE("frozen spot values") {
    // pinned against an independent 130-digit quadrature of the real-axis
    // integral representation
    CHECK_THAT(scaled_besselk(10.0, 10.0),
               Catch::Matchers::WithinAbs(6.518941487022e-01, 1e-12));
    CHECK_THAT(scaled_besselk(31.5, 20.0),
               Catch::Matchers::WithinAbs(3.049063241653e-01, 1e-12));
}

TEST_CASE("agreement with the extended-precision oracle across regimes") {
    // transition (x near T), oscillatory (x << T), decay (x >> T), small T
    const double cases[][2] = {{1.5, 0.13}, {1.5, 3.0},   {10.0, 2.0},
                               {10.0, 9.8}, {10.0, 30.0}, {25.7, 1.0},
                               {25.7, 25.7}, {50.0, 12.5}, {50.0, 55.0},
                               {99.0, 40.0}, {99.0, 99.0}, {99.0, 150.0}};
    for (const auto& c : cases) {
        const double t = c[0], x = c[1];
        const double got = scaled_besselk(t, x);
        const double want = dmf::besselk_scaled_reference(t, x);
        INFO("t = " << t << " x = " << x);
        REQUIRE_THAT(got, Catch::Matchers::WithinRel(want, 1e-9));
    }
}

TEST_CASE("positivity past the turning point") {
    // K_{iT}(x) has no zeros for x >= T; scan a few orders
    for (double t : {2.0, 11.3, 40.0}) {
        for (double x = t; x <= t + 30.0; x += 0.37) {
            INFO("t = " << t << " x = " << x);
            REQUIRE(scaled_besselk(t, x) > 0.0);
        }
    }
}

TEST_CASE("exponential decay envelope at large argument") {
    // for x >> T the scaled function behaves like
    // e^{pi T/2} sqrt(pi/(2x)) e^{-x}; check the ratio settles near 1
    const double t = 1.0, x = 30.0;
    const double lead = std::exp(M_PI * t / 2.0) *
                        std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
    CHECK_THAT(scaled_besselk(t, x) / lead,
               Catch::Matchers::WithinAbs(1.0, 0.05));
}

TEST_CASE("argument validation") {
    CHECK_THROWS(scaled_besselk(10.0, 0.0));
    CHECK_THROWS(scaled_besselk(10.0, -1.0));
    CHECK_THROWS(dmf::besselk_scaled_reference(10.0, 0.0));
    CHECK_THROWS(dmf::besselk_scaled_reference(-1.0, 1.0));
}

TEST_CASE("table interpolation stays inside the form tolerance") {
    const double T = 15.776813052831946;  // q = 13, k = 6
    dmf::BesselTable tab(T, 0.5, 80.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.5, 80.0);
    for (int i = 0; i < 400; ++i) {
        const double x = ux(rng);
        const double direct = scaled_besselk(T, x);
        const double interp = tab(x);
        INFO("x = " << x);
        REQUIRE_THAT(interp, Catch::Matchers::WithinAbs(
                                 direct, 1e-9 * (1.0 + std::abs(direct))));
    }
}
