#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dmf/pretrace.hpp"
#include "dmf/quadfield.hpp"
#include "dmf/waveform.hpp"
#include "oracles.hpp"

TEST_CASE("point-pair invariant agrees with the Mobius route") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> e(-5, 5);
    std::uniform_real_distribution<double> ux(-0.5, 0.5);
    std::uniform_real_distribution<double> uy(0.5, 2.0);
    int done = 0;
    while (done < 50) {
        const std::int64_t a = e(rng), b = e(rng), c = 13 * e(rng), d = e(rng);
        const std::int64_t det = a * d - b * c;
        if (det != 1) continue;
        ++done;
        const double x = ux(rng), y = uy(rng);
        const auto w = dmf::apply_mobius({a, b, c, d}, {x, y});
        const double via_mobius = dmf::point_pair_u(x, y, w.real(), w.imag());
        // the quadratic form route used by the lattice counters
        const double re = c * (x * x - y * y) + (d - a) * x - b;
        const double im = y * (2.0 * c * x + d - a);
        const double via_form = (re * re + im * im) / (y * y);
        INFO("matrix [" << a << " " << b << "; " << c << " " << d << "]");
        REQUIRE_THAT(via_mobius, Catch::Matchers::WithinAbs(via_form, 1e-9));
    }
}

TEST_CASE("matrix counts match a from-scratch double enumeration") {
    for (const auto& [x, y] : {std::pair{0.1, 1.2}, {0.31, 0.9}}) {
        for (std::int64_t ell : {1, 2, 3, 4}) {
            for (double delta : {0.25, 0.6}) {
                dmf::LatticeQuery Q{x, y, ell, delta, 13};
                const auto got = dmf::count_matrices(Q);
                const auto want = oracle::brute_matrix_count(x, y, ell, delta, 13, 60);
                INFO("z = " << x << "+" << y << "i, l = " << ell
                            << ", delta = " << delta);
                REQUIRE(got.m_star == want.m_star);
                REQUIRE(got.m_upper == want.m_upper);
                REQUIRE(got.m_parabolic == want.m_parabolic);
            }
        }
    }
}

TEST_CASE("parabolic contributions exist only at square determinants") {
    for (std::int64_t ell = 1; ell <= 25; ++ell) {
        dmf::LatticeQuery Q{0.27, 1.05, ell, 0.4, 13};
        const auto M = dmf::count_matrices(Q);
        const std::int64_t r = static_cast<std::int64_t>(std::llround(std::sqrt(double(ell))));
        INFO("l = " << ell);
        if (r * r == ell) REQUIRE(M.m_parabolic > 0);
        else REQUIRE(M.m_parabolic == 0);
    }
}

TEST_CASE("count sums stay below the stated benchmarks") {
    const auto rep = dmf::count_sums_vs_benchmarks(0.1, 1.2, 30, 1e-2, 13);
    CHECK(rep.ratio_star() <= 100.0);
    CHECK(rep.ratio_upper() <= 100.0);
    CHECK(rep.rhs_star > 0.0);
    CHECK(rep.rhs_upper > 0.0);
}

TEST_CASE("test kernel is normalized at its center") {
    const auto P = dmf::test_kernel(5.0, 2.0);
    CHECK_THAT(P.h(5.0), Catch::Matchers::WithinAbs(1.0, 1e-4));
    CHECK(P.u_max > 0.0);
    CHECK(P.kernel(P.u_max * 1.01) == 0.0);
    CHECK_THROWS(P.kernel(-0.1));
}

TEST_CASE("transform chain closes on itself") {
    // h -> g' -> k, then forward k -> q -> g -> h by independent quadrature
    auto gauss = [](double r) { return std::exp(-(r / 4.0) * (r / 4.0)); };
    const auto P = dmf::selberg_chain(gauss, 40.0, 6.0);
    const double s_cap = std::sqrt(std::max(P.u_max, 1.0)) + 1.0;
    for (double r : {0.0, 1.0, 2.5}) {
        auto kf = [&](double u) { return P.kernel(u); };
        auto grec = [&](double xi) {
            const double sh = std::sinh(xi / 2.0);
            return 2.0 * oracle::forward_q(kf, sh * sh, s_cap, 1e-10);
        };
        double h_rec = 2.0 * dmf::integrate_adaptive(
            [&](double xi) { return grec(xi) * std::cos(r * xi); }, 0.0, 6.0,
            1e-9);
        INFO("r = " << r);
        REQUIRE_THAT(h_rec, Catch::Matchers::WithinAbs(gauss(r), 1e-5));
    }
}

TEST_CASE("amplifier construction matches its definition") {
    const auto F = dmf::make_field(13);
    const auto h = dmf::make_form(F, 6, 0.058);
    const auto amp = dmf::build_amplifier(h.coeffs, 16);
    // recompute A = sum over primes in (16, 32) of w(p/16) log(p) a(p)^2
    double A = 0.0;
    for (std::int64_t p : {17, 19, 23, 29, 31}) {
        const double w = dmf::bump_w(static_cast<double>(p) / 16.0);
        A += w * std::log(static_cast<double>(p)) * h.coeffs(p) * h.coeffs(p);
    }
    CHECK_THAT(amp.A, Catch::Matchers::WithinRel(A, 1e-12));
    REQUIRE(!amp.y.empty());
    for (std::size_t i = 1; i < amp.y.size(); ++i)
        REQUIRE(amp.y[i - 1].first < amp.y[i].first);  // sorted support
    CHECK_THAT(amp.A, Catch::Matchers::WithinRel(19.2445689104097, 1e-10));
}

TEST_CASE("one-sided spectral bound holds pointwise") {
    const auto F = dmf::make_field(13);
    const auto h = dmf::make_form(F, 6, 0.058);
    const double l2 = dmf::l2_norm_numeric(h);
    const auto amp = dmf::build_amplifier(h.coeffs, 16);
    const auto P = dmf::test_kernel(h.T, 2.0);
    const double phi = h.eval(0.13, 0.92);
    const double lhs = P.h(h.T) * amp.A * phi * phi / (l2 * l2);
    const double rhs = dmf::geometric_side(P, amp, 13, 0.13, 0.92);
    CHECK(lhs <= rhs);
    CHECK(rhs > 0.0);
}
