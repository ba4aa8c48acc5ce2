#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dmf {

// 7-point Gauss / 15-point Kronrod pair on [-1,1].
namespace gk15 {
inline constexpr std::array<double, 8> xk = {
    0.99145537112081263920685469752632851664204433837033,
    0.94910791234275852452618968404785126240077093767062,
    0.86486442335976907278971278864092620121097230707409,
    0.74153118559939443986386477328078840707414764714139,
    0.58608723546769113029414483825872959843678075060436,
    0.40584515137739716690660641207696146334738201409937,
    0.20778495500789846760068940377324491347978440714517,
    0.0};
inline constexpr std::array<double, 8> wk = {
    0.02293532201052922496373200805896959199356081127575,
    0.06309209262997855329070066318920428666507115721155,
    0.10479001032225018383987632254151801744375665421383,
    0.14065325971552591874518959051023792039988975724800,
    0.16900472663926790282658342659855028410624490030294,
    0.19035057806478540991325640242101368282607807545536,
    0.20443294007529889241416199923464908471651760418072,
    0.20948214108472782801299917489171426369776208022370};
inline constexpr std::array<double, 4> wg = {
    0.12948496616886969327061143267908201832858740225995,
    0.27970539148927666790146777142377958955155027862906,
    0.38183005050511894495036977548897513387836508353386,
    0.41795918367346938775510204081632653061224489795918};
} // namespace gk15

struct GkResult {
    double value;
    double error;
    double mass;  // int |f|, for the rounding floor below
};

template <class F>
GkResult gauss_kronrod_15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double k = gk15::wk[7] * fc;
    double g = gk15::wg[3] * fc;
    double m = gk15::wk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        double x = h * gk15::xk[i];
        double fl = f(c - x), fr = f(c + x);
        k += gk15::wk[i] * (fl + fr);
        m += gk15::wk[i] * (std::abs(fl) + std::abs(fr));
        if (i % 2 == 1) g += gk15::wg[i / 2] * (fl + fr);
    }
    return {k * h, std::abs((k - g) * h), m * std::abs(h)};
}

// Adaptive bisection on the Gauss/Kronrod error estimate.  The tolerance is
// absolute and shared across subintervals in proportion to their length.
// An interval is also accepted once its error estimate sits at rounding
// level relative to its own absolute mass: past that point bisection only
// resamples noise, and chasing an unreachable budget used to blow the
// recursion up exponentially.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          int max_depth = 44) {
    struct Seg { double a, b; int depth; };
    std::vector<Seg> stack{{a, b, 0}};
    const double span = b - a;
    double total = 0.0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        auto [v, e, m] = gauss_kronrod_15(f, s.a, s.b);
        double budget = abs_tol * (s.b - s.a) / span;
        // A box whose 15 samples all vanish could still hide a narrow spike
        // (zero error estimate says nothing there); explore a few levels
        // before trusting emptiness.
        if (m == 0.0 && s.depth < 6) {
            double mid = 0.5 * (s.a + s.b);
            stack.push_back({s.a, mid, s.depth + 1});
            stack.push_back({mid, s.b, s.depth + 1});
            continue;
        }
        if (e <= std::max(budget, 4e-15 * m) || s.depth >= max_depth) {
            total += v;
        } else {
            double mid = 0.5 * (s.a + s.b);
            stack.push_back({s.a, mid, s.depth + 1});
            stack.push_back({mid, s.b, s.depth + 1});
        }
    }
    return total;
}

// Variant that accepts each subinterval relative to its own magnitude.
// Suits oscillatory integrands whose value sets the meaningful scale.
template <class F>
double integrate_adaptive_rel(F&& f, double a, double b, double rel_tol,
                              int max_depth = 52) {
    struct Seg { double a, b; double est, err; int depth; };
    auto first = gauss_kronrod_15(f, a, b);
    std::vector<Seg> stack{{a, b, first.value, first.error, 0}};
    double total = 0.0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.err <= rel_tol * std::abs(s.est) + 1e-305 ||
            s.b - s.a < 1e-13 * (1.0 + std::abs(s.a)) || s.depth >= max_depth) {
            total += s.est;
            continue;
        }
        double m = 0.5 * (s.a + s.b);
        auto l = gauss_kronrod_15(f, s.a, m);
        auto r = gauss_kronrod_15(f, m, s.b);
        stack.push_back({s.a, m, l.value, l.error, s.depth + 1});
        stack.push_back({m, s.b, r.value, r.error, s.depth + 1});
    }
    return total;
}

// Golden-section search for the maximum of a unimodal-in-practice function.
template <class F>
double golden_max(F&& f, double a, double b, double& xbest, int iters = 60) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::abs(a)); ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + r * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - r * (b - a); f1 = f(x1);
        }
    }
    xbest = (f1 > f2) ? x1 : x2;
    return std::max(f1, f2);
}

// Chebyshev proxy for smooth panels.  Coefficients come from the type-II
// discrete cosine sums at Chebyshev-Lobatto points; evaluation is Clenshaw.
struct ChebPanel {
    double a = 0.0, b = 0.0;
    std::vector<double> coef;

    template <class F>
    static ChebPanel fit(F&& f, double a, double b, int degree) {
        ChebPanel p;
        p.a = a;
        p.b = b;
        const int n = degree;
        std::vector<double> fv(n + 1);
        for (int j = 0; j <= n; ++j) {
            double th = M_PI * j / n;
            double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(th);
            fv[j] = f(x);
        }
        p.coef.assign(n + 1, 0.0);
        for (int m = 0; m <= n; ++m) {
            double s = 0.5 * (fv[0] + (m % 2 ? -1.0 : 1.0) * fv[n]);
            for (int j = 1; j < n; ++j)
                s += fv[j] * std::cos(M_PI * m * j / n);
            p.coef[m] = 2.0 * s / n;
        }
        p.coef[0] *= 0.5;
        p.coef[n] *= 0.5;
        return p;
    }

    double eval(double x) const {
        double t = (2.0 * x - a - b) / (b - a);
        double b1 = 0.0, b2 = 0.0;
        for (size_t m = coef.size(); m-- > 1;) {
            double tmp = 2.0 * t * b1 - b2 + coef[m];
            b2 = b1;
            b1 = tmp;
        }
        return t * b1 - b2 + coef[0];
    }

    // Magnitude of the last two coefficients bounds the truncation error on
    // the panel for functions with rapidly decaying Chebyshev series.
    double tail_estimate() const {
        size_t n = coef.size();
        if (n < 2) return 0.0;
        return std::abs(coef[n - 1]) + std::abs(coef[n - 2]);
    }
};

} // namespace dmf
