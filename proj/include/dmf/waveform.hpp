#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmf/besselk.hpp"
#include "dmf/coeff.hpp"
#include "dmf/quadfield.hpp"
#include "dmf/quadrature.hpp"

namespace dmf {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smallest N with 2 pi N y past the Bessel decay cutoff; every neglected
// term is then below tol relative to the transition scale.
inline int64_t truncation_length(double T, double y, double tol) {
    if (!(y > 0.0)) throw std::domain_error("truncation_length needs y > 0");
    if (!(tol > 0.0 && tol <= 1e-2))
        throw std::domain_error("truncation_length needs tol in (0, 1e-2]");
    double X = bessel_argument_cutoff(T, tol);
    return static_cast<int64_t>(std::ceil(X / (kTwoPi * y)));
}

// An evaluable eigenform.  All values carry the e^{pi T/2} scaling of the
// Bessel kernel; sup / L2 ratios are scaling-free.
struct FormHandle {
    const FieldContext* F = nullptr;
    int64_t k = 0;
    double T = 0.0;
    double tol = 1e-10;
    double y_floor = 0.0;
    CoeffTable coeffs;
    BesselTable bessel;

    double eval(double x, double y) const {
        int64_t N = truncation_length(T, y, tol);
        if (N > coeffs.nmax())
            throw std::runtime_error(
                "coefficient table too short: need n <= " + std::to_string(N) +
                ", have " + std::to_string(coeffs.nmax()));
        x -= std::round(x);  // unit translation is exact; keeps cos args small
        double s = 0.0;
        for (int64_t n = 1; n <= N; ++n) {
            double a = coeffs.a[n];
            if (a == 0.0) continue;
            s += a * bessel(kTwoPi * n * y) * std::cos(kTwoPi * n * x);
        }
        return 2.0 * std::sqrt(y) * s;
    }

    // Sum of |a(n) b(2 pi n y)|: an x-free envelope of the Fourier series.
    double majorant(double y) const {
        int64_t N = truncation_length(T, y, tol);
        if (N > coeffs.nmax())
            throw std::runtime_error("coefficient table too short");
        double s = 0.0;
        for (int64_t n = 1; n <= N; ++n)
            s += std::abs(coeffs.a[n] * bessel(kTwoPi * n * y));
        return 2.0 * std::sqrt(y) * s;
    }

    // Parseval row mass: sum_n a(n)^2 b(2 pi n y)^2.
    double row_mass(double y) const {
        int64_t N = truncation_length(T, y, tol);
        if (N > coeffs.nmax())
            throw std::runtime_error("coefficient table too short");
        double s = 0.0;
        for (int64_t n = 1; n <= N; ++n) {
            double t = coeffs.a[n] * bessel(kTwoPi * n * y);
            s += t * t;
        }
        return s;
    }
};

inline FormHandle make_form(const FieldContext& F, int64_t k, double y_floor,
                            double tol = 1e-10) {
    if (k < 1) throw std::invalid_argument("character index k must be >= 1");
    if (!(y_floor > 0.0)) throw std::invalid_argument("y_floor must be > 0");
    FormHandle h;
    h.F = &F;
    h.k = k;
    h.T = spectral_parameter(F, k);
    h.tol = tol;
    h.y_floor = y_floor;
    int64_t N = truncation_length(h.T, y_floor, tol);
    h.coeffs = make_coeff_table(F, k, N);
    double x_hi = bessel_argument_cutoff(h.T, tol);
    h.bessel = BesselTable(h.T, 0.999 * kTwoPi * y_floor, x_hi);
    return h;
}

// L2 mass over the level-q surface, assembled from the standard fundamental
// domain and its q inverted translates.  The translates are pulled to
// heights >= sqrt(3)/(2q) through |phi(-1/w)| = |phi(w/q)| (the level
// involution preserves |phi| for these self-dual newforms; the volume and
// automorphy tests pin this down numerically).  Full-width rows integrate by
// Parseval; the band sqrt(3)/2 <= v < 1 subtracts the unit-disk caps.
struct L2Breakdown {
    double main_high = 0.0;   // y >= 1 rows of the standard domain
    double main_band = 0.0;   // sliver sqrt(3)/2 <= y < 1, |x| >= sqrt(1-y^2)
    double strip = 0.0;       // translate strip rows v >= sqrt(3)/2
    double caps = 0.0;        // subtracted disk caps of the strip band
    double total() const { return main_high + main_band + strip - caps; }
};

inline L2Breakdown l2_mass_breakdown(const FormHandle& h, double quad_tol = 1e-9) {
    const FieldContext& F = *h.F;
    const double q = static_cast<double>(F.q);
    const double v0 = std::sqrt(3.0) / 2.0;
    const double x_hi = h.bessel.x_hi();
    L2Breakdown out;

    // Rows y >= 1 of the standard domain: 2 * integral of row_mass d(log y).
    double Ymax = x_hi / kTwoPi;
    out.main_high = 2.0 * integrate_adaptive(
        [&](double u) { return h.row_mass(std::exp(u)); }, 0.0,
        std::log(std::max(Ymax, 1.001)), quad_tol);

    // Sliver of the standard domain below y = 1.
    out.main_band = integrate_adaptive(
        [&](double v) {
            double xc = std::sqrt(std::max(0.0, 1.0 - v * v));
            double inner = integrate_adaptive(
                [&](double x) {
                    double p = h.eval(x, v);
                    return p * p;
                },
                xc, 0.5, quad_tol);
            return 2.0 * inner / (v * v);
        },
        v0, 1.0, quad_tol);

    // Translate strip: full-period Parseval rows at height v/q.
    double Vmax = q * x_hi / kTwoPi;
    out.strip = 2.0 * integrate_adaptive(
        [&](double u) { return h.row_mass(std::exp(u) / q); },
        std::log(v0), std::log(Vmax), quad_tol);

    // Disk caps carved out of the strip band.
    double caps = 0.0;
    for (int64_t j = 0; j < F.q; ++j) {
        caps += integrate_adaptive(
            [&](double v) {
                double xc = std::sqrt(std::max(0.0, 1.0 - v * v));
                double inner = integrate_adaptive(
                    [&](double u) {
                        double p = h.eval(u / q, v / q);
                        return p * p;
                    },
                    j - xc, j + xc, quad_tol);
                return inner / (v * v);
            },
            v0, 1.0, quad_tol);
    }
    out.caps = caps;
    return out;
}

inline double l2_norm_numeric(const FormHandle& h, double quad_tol = 1e-9) {
    double m = l2_mass_breakdown(h, quad_tol).total();
    if (!(m > 0.0)) throw std::runtime_error("nonpositive L2 mass");
    return std::sqrt(m);
}

// Same domain decomposition integrating the constant 1; must reproduce the
// surface volume (q+1) pi / 3.  Canary for the assembly logic.
inline double domain_volume(int64_t q_) {
    double q = static_cast<double>(q_);
    const double v0 = std::sqrt(3.0) / 2.0;
    auto xc = [](double v) { return std::sqrt(std::max(0.0, 1.0 - v * v)); };
    double main_high = 1.0;  // integral_1^inf dy/y^2, unit width
    double main_band = integrate_adaptive(
        [&](double v) { return (1.0 - 2.0 * xc(v)) / (v * v); }, v0, 1.0,
        1e-12);
    double strip = q * (2.0 / std::sqrt(3.0));
    double caps = q * integrate_adaptive(
        [&](double v) { return 2.0 * xc(v) / (v * v); }, v0, 1.0, 1e-12);
    return main_high + main_band + strip - caps;
}

struct SupnormResult {
    double sup_ratio = 0.0;     // sup |phi| / ||phi||_2
    double argmax_x = 0.0;
    double argmax_y = 0.0;
    double l2_norm = 0.0;
    double sup_raw = 0.0;
};

// Grid scan over the reduced domain: x in [0, 1/2] (evenness), y geometric
// from y_floor to the height where only n = 1 survives, then a 1-d sweep of
// the single-term regime.  res multiplies the wavelength-resolution grid.
inline SupnormResult supnorm_scan(const FormHandle& h, double res = 4.0,
                                  double y_min = 0.0) {
    const double T = std::max(h.T, 2.0);
    if (y_min <= 0.0) y_min = 1.0 / std::sqrt(static_cast<double>(h.F->q));
    const double X = bessel_argument_cutoff(h.T, h.tol);
    const double y_single = X / (2.0 * kTwoPi);
    const double dx = 1.0 / (res * T);
    const double rho = 1.0 + std::numbers::pi / (res * T);

    double best = 0.0, bx = 0.0, by = y_min;
    struct Cell { double v, x, y; };
    std::vector<Cell> top;
    auto consider = [&](double v, double x, double y) {
        if (v > best) { best = v; bx = x; by = y; }
        top.push_back({v, x, y});
    };

    for (double y = y_min; y <= y_single; y *= rho)
        for (double x = 0.0; x <= 0.5 + 1e-12; x += dx)
            consider(std::abs(h.eval(std::min(x, 0.5), y)),
                     std::min(x, 0.5), y);

    std::sort(top.begin(), top.end(),
              [](const Cell& a, const Cell& b) { return a.v > b.v; });
    size_t keep = std::min<size_t>(top.size(), 10);
    for (size_t i = 0; i < keep; ++i) {
        double x = top[i].x, y = top[i].y;
        for (int round = 0; round < 2; ++round) {
            double xr;
            golden_max([&](double t) { return std::abs(h.eval(t, y)); },
                       std::max(0.0, x - dx), std::min(0.5, x + dx), xr);
            x = xr;
            double yr;
            golden_max([&](double t) { return std::abs(h.eval(x, t)); },
                       std::max(y_min, y / rho), std::min(y_single, y * rho),
                       yr);
            y = yr;
        }
        double v = std::abs(h.eval(x, y));
        if (v > best) { best = v; bx = x; by = y; }
    }

    // Single-term region: phi ~ 2 sqrt(y) a(1) b(2 pi y) cos(2 pi x),
    // maximized at x = 0; b oscillates below the turning point.
    {
        double u_lo = kTwoPi * y_single, u_hi = X;
        int steps = static_cast<int>(std::ceil(4.0 * res *
                                               std::max(1.0, u_hi - u_lo)));
        double du = (u_hi - u_lo) / steps;
        for (int i = 0; i <= steps; ++i) {
            double u = u_lo + i * du;
            double y = u / kTwoPi;
            double v = 2.0 * std::sqrt(y) *
                       std::abs(h.coeffs.a[1] * h.bessel(u));
            if (v > best) {
                double yr;
                double vb = golden_max(
                    [&](double t) {
                        return 2.0 * std::sqrt(t) *
                               std::abs(h.coeffs.a[1] * h.bessel(kTwoPi * t));
                    },
                    std::max(y_single, y - du), y + du, yr);
                if (vb > best) { best = vb; bx = 0.0; by = yr; }
            }
        }
    }

    SupnormResult r;
    r.l2_norm = l2_norm_numeric(h);
    r.sup_raw = best;
    r.sup_ratio = best / r.l2_norm;
    r.argmax_x = bx;
    r.argmax_y = by;
    return r;
}

// Integer Mobius action for the automorphy checks.
struct GroupElement {
    int64_t a = 1, b = 0, c = 0, d = 1;
};

inline std::complex<double> apply_mobius(const GroupElement& g,
                                         std::complex<double> z) {
    std::complex<double> num(g.a * z.real() + g.b, g.a * z.imag());
    std::complex<double> den(g.c * z.real() + g.d, g.c * z.imag());
    return num / den;
}

} // namespace dmf
