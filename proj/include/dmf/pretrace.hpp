#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dmf/coeff.hpp"
#include "dmf/quadfield.hpp"
#include "dmf/quadrature.hpp"
#include "dmf/util.hpp"

namespace dmf {

// Point-pair invariant u(z, w) = |z - w|^2 / (Im z Im w).
inline double point_pair_u(double x1, double y1, double x2, double y2) {
    double dx = x1 - x2, dy = y1 - y2;
    return (dx * dx + dy * dy) / (y1 * y2);
}

// ---------------------------------------------------------------------------
// Selberg transform chain.  Conventions, fixed by the roundtrip test:
//   g(xi) = (1/2pi) Int h(r) e^{-i r xi} dr
//   2 q(v) = g(2 asinh sqrt(v))
//   k(u) = -(1/pi) Int_{u/4}^inf (v - u/4)^{-1/2} dq(v)
//        = -(2/pi) Int_0^inf q'(u/4 + w^2) dw.
// ---------------------------------------------------------------------------

// Kernel from a closed-form g'; the w-integral above done adaptively.
inline double kernel_from_gprime(const std::function<double(double)>& gprime,
                                 double u, double w_max, double abs_tol) {
    auto qprime = [&](double v) {
        double xi = 2.0 * std::asinh(std::sqrt(v));
        return gprime(xi) / (2.0 * std::sqrt(v * (v + 1.0)));
    };
    double I = integrate_adaptive(
        [&](double w) { return qprime(u / 4.0 + w * w); }, 0.0, w_max,
        abs_tol);
    return -(2.0 / std::numbers::pi) * I;
}

// Numeric chain from an arbitrary even h with effective support [0, r_max].
struct TransformPair {
    std::function<double(double)> h;
    std::function<double(double)> g;
    std::function<double(double)> gprime;
    double u_max = 0.0;  // kernel effective support
    std::vector<ChebPanel> ktab;
    std::vector<double> kbreaks;

    double kernel(double u) const {
        if (u < 0.0) throw std::domain_error("kernel argument must be >= 0");
        if (u > u_max) return 0.0;
        auto it = std::lower_bound(kbreaks.begin(), kbreaks.end(), u);
        size_t i = static_cast<size_t>(it - kbreaks.begin());
        if (i >= ktab.size()) i = ktab.size() - 1;
        return ktab[i].eval(u);
    }
};

inline void tabulate_kernel(TransformPair& P, double w_max, double tab_tol) {
    double k0 = kernel_from_gprime(P.gprime, 0.0, w_max, tab_tol);
    double floor_ = std::abs(k0) * 1e-12;
    double u_max = 1.0;
    auto small_past = [&](double u) {
        for (double f : {0.7, 0.85, 1.0})
            if (std::abs(kernel_from_gprime(P.gprime, f * u, w_max,
                                            tab_tol)) > floor_)
                return false;
        return true;
    };
    while (!small_past(u_max) && u_max < 1e5) u_max *= 2.0;
    P.u_max = u_max;
    std::function<void(double, double, int)> split = [&](double a, double b,
                                                         int depth) {
        ChebPanel p = ChebPanel::fit(
            [&](double u) {
                return kernel_from_gprime(P.gprime, u, w_max, tab_tol);
            },
            a, b, 16);
        if (p.tail_estimate() <= 1e-10 * std::max(1.0, std::abs(k0)) ||
            depth >= 14) {
            P.ktab.push_back(std::move(p));
            return;
        }
        double m = 0.5 * (a + b);
        split(a, m, depth + 1);
        split(m, b, depth + 1);
    };
    split(0.0, u_max, 0);
    for (const auto& p : P.ktab) P.kbreaks.push_back(p.b);
}

// Chain from an arbitrary even h with effective support [0, r_max].  The
// Fourier-side derivative is tabulated once; without that, the kernel
// quadrature would nest three adaptive integrals.
inline TransformPair selberg_chain(std::function<double(double)> h,
                                   double r_max, double xi_max = 16.0) {
    TransformPair P;
    P.h = h;
    auto hcopy = P.h;
    P.g = [hcopy, r_max](double xi) {
        return (1.0 / std::numbers::pi) *
               integrate_adaptive(
                   [&](double r) { return hcopy(r) * std::cos(r * xi); }, 0.0,
                   r_max, 1e-12);
    };
    auto gp_direct = [hcopy, r_max](double xi) {
        return -(1.0 / std::numbers::pi) *
               integrate_adaptive(
                   [&](double r) { return hcopy(r) * r * std::sin(r * xi); },
                   0.0, r_max, 1e-12);
    };
    auto gp_panels = std::make_shared<std::vector<ChebPanel>>();
    auto gp_breaks = std::make_shared<std::vector<double>>();
    {
        std::function<void(double, double, int)> split =
            [&](double a, double b, int depth) {
                ChebPanel p = ChebPanel::fit(gp_direct, a, b, 16);
                if (p.tail_estimate() <= 1e-12 || depth >= 12) {
                    gp_panels->push_back(std::move(p));
                    return;
                }
                double m = 0.5 * (a + b);
                split(a, m, depth + 1);
                split(m, b, depth + 1);
            };
        split(0.0, xi_max, 0);
        for (const auto& p : *gp_panels) gp_breaks->push_back(p.b);
    }
    P.gprime = [gp_panels, gp_breaks, xi_max](double xi) {
        if (xi > xi_max) return 0.0;
        auto it = std::lower_bound(gp_breaks->begin(), gp_breaks->end(), xi);
        size_t i = static_cast<size_t>(it - gp_breaks->begin());
        if (i >= gp_panels->size()) i = gp_panels->size() - 1;
        return (*gp_panels)[i].eval(xi);
    };
    // The kernel quadrature crosses the g' panel joints, where the
    // tabulation leaves ~1e-12 kinks; a per-length budget below that scale
    // would chase every joint to the depth cap.
    double w_max = std::sinh(0.5 * xi_max) * 1.05 + 1.0;
    tabulate_kernel(P, w_max, std::max(1e-11, 2e-12 * w_max));
    return P;
}

// Localized test multiplier centered at r = +-T.  The plain two-Gaussian
// bump goes negative on the complementary spectrum i[0, 1/2]; completing
// the square (cross term 2 e^{-(T^2+r^2)/w^2}) plus a small floor keeps it
// strictly positive there while leaving g elementary:
//   h_T(r) = e^{-((r-T)/w)^2} + e^{-((r+T)/w)^2} + (2 e^{-T^2/w^2} +
//            e^{-2T^2/w^2}) e^{-r^2/w^2}
//   g_T(xi) = (w / 2 sqrt(pi)) e^{-w^2 xi^2/4} (2 cos(T xi) + C0).
inline TransformPair test_kernel(double T, double width = 1.0) {
    if (!(T >= 1.0)) throw std::invalid_argument("test_kernel needs T >= 1");
    const double w = width;
    const double C0 = 2.0 * std::exp(-T * T / (w * w)) +
                      std::exp(-2.0 * T * T / (w * w));
    TransformPair P;
    P.h = [T, w, C0](double r) {
        auto sq = [](double t) { return t * t; };
        return std::exp(-sq((r - T) / w)) + std::exp(-sq((r + T) / w)) +
               C0 * std::exp(-r * r / (w * w));
    };
    const double amp = w / (2.0 * std::sqrt(std::numbers::pi));
    P.g = [T, w, C0, amp](double xi) {
        return amp * std::exp(-w * w * xi * xi / 4.0) *
               (2.0 * std::cos(T * xi) + C0);
    };
    P.gprime = [T, w, C0, amp](double xi) {
        double e = std::exp(-w * w * xi * xi / 4.0);
        return amp * e *
               (-0.5 * w * w * xi * (2.0 * std::cos(T * xi) + C0) -
                2.0 * T * std::sin(T * xi));
    };
    // Gaussian envelope e^{-w^2 xi^2/4}: 1e-18 of scale by xi = 13/w.
    double xi_max = 13.0 / w + 2.0;
    double w_max = std::sinh(0.5 * xi_max) * 1.05 + 1.0;
    tabulate_kernel(P, w_max, 1e-11);
    return P;
}

// Complementary-spectrum positivity of h via h(i theta), needed for the
// one-sided pre-trace inequality.  Closed form for the test multiplier.
inline double test_multiplier_on_imag(double T, double width, double theta) {
    double w = width;
    double A = std::exp((theta * theta - T * T) / (2.0 * w * w));
    double s = 2.0 * A * std::cos(theta * T / (w * w));
    return s * s + std::exp(-2.0 * T * T / (w * w)) *
                       std::exp(theta * theta / (w * w));
}

// ---------------------------------------------------------------------------
// Hyperbolic lattice counting: integer matrices (a b; c d), det = ell,
// q | c, u(gamma z, z) <= delta.  The membership test is
//   [c(x^2-y^2) + (d-a)x - b]^2 + y^2 (2cx + d - a)^2 <= delta ell y^2
// and every loop bound below is a conservative consequence of it.
// ---------------------------------------------------------------------------

struct LatticeQuery {
    double x = 0.0;
    double y = 1.0;
    int64_t ell = 1;
    double delta = 1e-3;
    int64_t q = 13;
};

struct MatrixCounts {
    int64_t m_star = 0;       // c != 0, trace^2 != 4 ell
    int64_t m_upper = 0;      // c == 0, a != d
    int64_t m_parabolic = 0;  // trace^2 == 4 ell
    int64_t total() const { return m_star + m_upper + m_parabolic; }
};

inline bool matrix_in_ball(const LatticeQuery& Q, int64_t a, int64_t b,
                           int64_t c, int64_t d) {
    double re = c * (Q.x * Q.x - Q.y * Q.y) + (d - a) * Q.x - b;
    double im = Q.y * (2.0 * c * Q.x + d - a);
    return re * re + im * im <= Q.delta * Q.ell * Q.y * Q.y;
}

inline double enumeration_cells(const LatticeQuery& Q) {
    double tplus = 1.0 + Q.delta / 2.0 +
                   std::sqrt(Q.delta + Q.delta * Q.delta / 4.0);
    double R = std::sqrt(Q.ell * tplus);
    double sdl = std::sqrt(Q.delta * Q.ell);
    double cs = 2.0 * R / (Q.q * Q.y) + 1.0;
    return cs * (2.0 * R + 1.0) * (2.0 * sdl / std::max(1.0, (double)Q.q) + 2.0);
}

template <class Visitor>
void for_each_matrix(const LatticeQuery& Q, Visitor&& visit) {
    if (Q.ell < 1) throw std::invalid_argument("determinant must be >= 1");
    if (!(Q.y > 0.0)) throw std::invalid_argument("need Im z > 0");
    if (enumeration_cells(Q) > 1e8)
        throw std::runtime_error("enumeration infeasible: ~" +
                                 std::to_string(enumeration_cells(Q)) +
                                 " cells");
    const double x = Q.x, y = Q.y;
    const int64_t ell = Q.ell;
    const double tplus = 1.0 + Q.delta / 2.0 +
                         std::sqrt(Q.delta + Q.delta * Q.delta / 4.0);
    const double R = std::sqrt(ell * tplus);
    const double sdl = std::sqrt(Q.delta * ell);

    // c = 0: a d = ell, b confined to an interval.
    for (int64_t adiv = 1; adiv <= ell; ++adiv) {
        if (ell % adiv) continue;
        for (int sgn = +1; sgn >= -1; sgn -= 2) {
            int64_t a = sgn * adiv, d = sgn * (ell / adiv);
            double gap2 = Q.delta * ell - (double)(d - a) * (d - a);
            if (gap2 < 0.0) continue;
            double half = y * std::sqrt(gap2);
            double ctr = (double)(d - a) * x;
            int64_t blo = (int64_t)std::ceil(ctr - half) - 1;
            int64_t bhi = (int64_t)std::floor(ctr + half) + 1;
            for (int64_t b = blo; b <= bhi; ++b)
                if (matrix_in_ball(Q, a, b, 0, d)) visit(a, b, (int64_t)0, d);
        }
    }

    // c != 0: b = (ad - ell)/c forced; a runs on a residue progression.
    int64_t mmax = (int64_t)std::floor(R / (Q.q * y)) + 1;
    for (int64_t m = -mmax; m <= mmax; ++m) {
        if (m == 0) continue;
        int64_t c = m * Q.q;
        int64_t ac = std::abs(c);
        int64_t dlo = (int64_t)std::ceil(-c * x - R) - 1;
        int64_t dhi = (int64_t)std::floor(-c * x + R) + 1;
        for (int64_t d = dlo; d <= dhi; ++d) {
            int64_t g = gcd64(d, ac);
            if (ell % g) continue;
            int64_t step = ac / g;
            // solve a * d == ell (mod ac): a == (ell/g) * inv(d/g) mod step
            int64_t a0 = 0;
            if (step > 1) {
                int64_t dd = ((d / g) % step + step) % step;
                // modular inverse by extended Euclid
                int64_t t = 0, newt = 1, r = step, newr = dd;
                while (newr != 0) {
                    int64_t quot = r / newr;
                    int64_t tmp = t - quot * newt; t = newt; newt = tmp;
                    tmp = r - quot * newr; r = newr; newr = tmp;
                }
                if (r != 1) continue;  // inverse must exist when gcd split off
                int64_t inv = ((t % step) + step) % step;
                a0 = (int64_t)((__int128)((ell / g) % step) * inv % step);
            }
            double actr = 2.0 * c * x + d;
            int64_t alo = (int64_t)std::ceil(actr - sdl) - 1;
            int64_t a1 = alo + ((a0 - alo) % step + step) % step;
            int64_t ahi = (int64_t)std::floor(actr + sdl) + 1;
            for (int64_t a = a1; a <= ahi; a += step) {
                __int128 num = (__int128)a * d - ell;
                if (num % c) continue;
                int64_t b = (int64_t)(num / c);
                if (matrix_in_ball(Q, a, b, c, d)) visit(a, b, c, d);
            }
        }
    }
}

inline MatrixCounts count_matrices(const LatticeQuery& Q) {
    if (!(Q.delta > 0.0 && Q.delta < 1.0))
        throw std::invalid_argument("delta must lie in (0,1)");
    MatrixCounts M;
    for_each_matrix(Q, [&](int64_t a, int64_t b, int64_t c, int64_t d) {
        (void)b;
        int64_t tr = a + d;
        if (tr * tr == 4 * Q.ell) ++M.m_parabolic;
        else if (c != 0) ++M.m_star;
        else ++M.m_upper;
    });
    return M;
}

struct CountSumsReport {
    double sum_star = 0.0;
    double rhs_star = 0.0;
    double sum_upper = 0.0;
    double rhs_upper = 0.0;
    double ratio_star() const { return sum_star / rhs_star; }
    double ratio_upper() const { return sum_upper / rhs_upper; }
};

// Aggregated counts against the generic / upper-triangular benchmark
// shapes L/y + L^{3/2} delta^{1/2} + L^2 delta and L + L^3 delta^{1/2} y.
inline CountSumsReport count_sums_vs_benchmarks(double x, double y, int64_t L,
                                                double delta, int64_t q) {
    CountSumsReport r;
    for (int64_t ell = 1; ell <= L; ++ell) {
        LatticeQuery Q{x, y, ell, delta, q};
        r.sum_star += count_matrices(Q).m_star;
    }
    auto ps = primes_up_to(L);
    for (int64_t p1 : ps)
        for (int64_t p2 : ps) {
            LatticeQuery Q{x, y, p1 * p2, delta, q};
            r.sum_upper += count_matrices(Q).m_upper;
        }
    double Ld = static_cast<double>(L);
    r.rhs_star = Ld / y + std::pow(Ld, 1.5) * std::sqrt(delta) +
                 Ld * Ld * delta;
    r.rhs_upper = Ld + Ld * Ld * Ld * std::sqrt(delta) * y;
    return r;
}

// ---------------------------------------------------------------------------
// Amplifier.
// ---------------------------------------------------------------------------

// Smooth bump, support (1, 2), peak value 1 at 3/2.
inline double bump_w(double r) {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    double t = 2.0 * r - 3.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

inline double bump_mass() {
    return integrate_adaptive([](double r) { return bump_w(r); }, 1.0, 2.0,
                              1e-13);
}

struct AmplifierSpec {
    int64_t N = 0;
    std::vector<std::pair<int64_t, double>> x;  // (prime, x_p)
    std::vector<std::pair<int64_t, double>> y;  // (ell, y_ell), ell ascending
    double A = 0.0;                             // sum_p w(p/N) log(p) a_k(p)^2
};

inline AmplifierSpec build_amplifier(const CoeffTable& coeffs, int64_t N) {
    if (N < 10) throw std::invalid_argument("amplifier base N must be >= 10");
    if (coeffs.nmax() < 2 * N)
        throw std::invalid_argument("coefficient table must reach 2N");
    AmplifierSpec S;
    S.N = N;
    for (int64_t p : primes_up_to(2 * N)) {
        if (p <= N) continue;
        double wv = bump_w(static_cast<double>(p) / N);
        if (wv == 0.0) continue;
        double xp = wv * std::log(static_cast<double>(p)) * coeffs.a[p];
        S.x.emplace_back(p, xp);
        S.A += wv * std::log(static_cast<double>(p)) * coeffs.a[p] *
               coeffs.a[p];
    }
    // y_ell = sum_{d | (m,n), ell = mn/d^2} x_m x_n over the prime support:
    // ell = 1 (diagonal), p^2, and p p' cross terms.
    double y1 = 0.0;
    for (auto& [p, xp] : S.x) y1 += xp * xp;
    S.y.emplace_back(1, y1);
    std::vector<std::pair<int64_t, double>> rest;
    for (size_t i = 0; i < S.x.size(); ++i) {
        auto [p, xp] = S.x[i];
        rest.emplace_back(p * p, xp * xp);
        for (size_t j = i + 1; j < S.x.size(); ++j) {
            auto [p2, xp2] = S.x[j];
            rest.emplace_back(p * p2, 2.0 * xp * xp2);
        }
    }
    std::sort(rest.begin(), rest.end());
    S.y.insert(S.y.end(), rest.begin(), rest.end());
    return S;
}

// Geometric side of the amplified pre-trace bound, in the one-sided form
// used downstream: sum_ell (|y_ell| / sqrt(ell)) sum_gamma |k(u(gamma z, z))|.
inline double geometric_side(const TransformPair& P, const AmplifierSpec& S,
                             int64_t q, double x, double y) {
    double total = 0.0;
    for (auto& [ell, yl] : S.y) {
        if (yl == 0.0) continue;
        LatticeQuery Q{x, y, ell, P.u_max, q};
        double s = 0.0;
        for_each_matrix(Q, [&](int64_t a, int64_t b, int64_t c, int64_t d) {
            double re = c * (x * x - y * y) + (d - a) * x - b;
            double im = y * (2.0 * c * x + d - a);
            double u = (re * re + im * im) / (ell * y * y);
            s += std::abs(P.kernel(u));
        });
        total += std::abs(yl) / std::sqrt(static_cast<double>(ell)) * s;
    }
    return total;
}

} // namespace dmf
