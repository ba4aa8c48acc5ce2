#pragma once
// Extended-precision reference for the scaled Bessel function
// exp(pi t / 2) K_{it}(x), used as an independent oracle against the
// double-precision contour implementation.
//
// Works from the real-axis integral K_{it}(x) = int_0^inf exp(-x cosh u)
// cos(t u) du.  The integral is exponentially smaller than its integrand
// (the scaled value is O(1) while the integrand peaks at exp(-x)), so the
// oscillatory cancellation costs about pi*t/(2 ln 10) decimal digits.  At
// t <= 100 that is 69 digits; we evaluate with 130 and keep a wide margin.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace dmf {

namespace hp {

using mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<130>>;

inline constexpr int kGaussOrder = 64;

struct GaussRule {
    std::vector<mp> node;    // on (-1, 1)
    std::vector<mp> weight;
};

// Gauss-Legendre nodes by Newton iteration on the recurrence; the double
// seed is accurate to 1e-16 and each step doubles the digits.
inline const GaussRule& gauss_rule() {
    static GaussRule rule;
    static std::once_flag once;
    std::call_once(once, [] {
        const int n = kGaussOrder;
        rule.node.resize(n);
        rule.weight.resize(n);
        const mp one = 1;
        for (int i = 0; i < n / 2; ++i) {
            mp x = cos(mp(3.141592653589793238462643383279502884L) * (i + 0.75) / (n + 0.5));
            mp pn = 0, pd = 0;
            for (int it = 0; it < 9; ++it) {
                mp p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    mp p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pn = p1;
                pd = n * (x * p1 - p0) / (x * x - one);
                x -= pn / pd;
            }
            mp w = 2 / ((one - x * x) * pd * pd);
            rule.node[i] = x;
            rule.weight[i] = w;
            rule.node[n - 1 - i] = -x;
            rule.weight[n - 1 - i] = w;
        }
    });
    return rule;
}

}  // namespace hp

// Scaled Bessel value exp(pi t / 2) K_{it}(x) to well beyond double accuracy.
// Panels bound the oscillation phase by pi and the envelope decay by
// exp(-8) each, so the fixed Gauss order resolves every panel to the
// working precision.
inline double besselk_scaled_reference(double t, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("argument must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("parameter must be nonnegative");
    using hp::mp;
    const auto& rule = hp::gauss_rule();

    // Tail cutoff: beyond t_max the integrand is below the working precision
    // relative to its peak exp(-x).
    const double tail_log = 130 * 2.302585092994046 + 5.0;
    const double t_max = std::acosh(1.0 + tail_log / x);

    const double phase_cap = 3.141592653589793 / std::max(t, 1.0);

    const mp mx = x;
    const mp mt = t;
    mp total = 0;
    double lo = 0.0;
    while (lo < t_max) {
        // Envelope cap: x * (cosh(hi) - cosh(lo)) <= 8.
        double hi_env = std::acosh(std::cosh(lo) + 8.0 / x);
        double hi = std::min({lo + phase_cap, hi_env, lo + 2.0, t_max});
        const mp c = (mp(hi) + mp(lo)) / 2;
        const mp h = (mp(hi) - mp(lo)) / 2;
        mp acc = 0;
        for (int i = 0; i < hp::kGaussOrder; ++i) {
            const mp u = c + h * rule.node[i];
            acc += rule.weight[i] * exp(-mx * cosh(u)) * cos(mt * u);
        }
        total += h * acc;
        lo = hi;
    }

    static const mp pi = 4 * atan(mp(1));
    return (exp(pi * mt / 2) * total).convert_to<double>();
}

}  // namespace dmf
