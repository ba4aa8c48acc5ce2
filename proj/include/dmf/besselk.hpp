#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dmf/quadrature.hpp"

namespace dmf {

// Exponentially normalized K-Bessel with imaginary order:
//   b(T, x) = e^{pi T / 2} K_{iT}(x),  T >= 0, x > 0.
// The factor keeps everything O(1) through the transition x ~ T, where the
// bare kernel is smaller than e^{-pi T / 2} and doubles would be useless.
//
// Two contour deformations of the integral representation, picked by the
// switch point x_sw = T + 2 T^{1/3} + 5:
//
// Case x >= x_sw: shift to the saddle height theta* = asin(T/x).  The phase
// becomes nonoscillatory up to a bounded cosine and the envelope decays like
// exp(-x cos(theta*) (cosh s - 1)); 45 e-folds of envelope suffice.
//
// Case x < x_sw: integrate along the real axis to S = acosh((2T+40)/x),
// then climb the vertical segment to height pi/2, where the tail beyond is
// below e^{-40}.  Both pieces are mildly oscillatory and O(1).
inline double scaled_besselk(double T, double x) {
    if (!(x > 0.0)) throw std::domain_error("scaled_besselk needs x > 0");
    T = std::abs(T);
    const double half_pi = 0.5 * std::numbers::pi;
    const double xsw = T + 2.0 * std::cbrt(T) + 5.0;
    if (x >= xsw) {
        double th = (T < x) ? std::asin(T / x) : half_pi;
        double c0 = std::cos(th);
        double E = T * (half_pi - th) - x * c0;
        double send = std::acosh(1.0 + 45.0 / (x * c0));
        double I = integrate_adaptive_rel(
            [&](double s) {
                return std::exp(-x * c0 * (std::cosh(s) - 1.0)) *
                       std::cos(T * (s - std::sinh(s)));
            },
            0.0, send, 1e-12);
        return std::exp(E) * I;
    }
    double S = std::acosh((2.0 * T + 40.0) / x);
    double I1 = integrate_adaptive_rel(
        [&](double s) { return std::cos(T * s - x * std::sinh(s)); }, 0.0, S,
        1e-12);
    double cS = std::cosh(S), sS = std::sinh(S);
    double I2 = integrate_adaptive_rel(
        [&](double u) {
            double ex = T * (half_pi - u) - x * cS * std::cos(u);
            return std::exp(ex) * std::sin(T * S - x * sS * std::sin(u));
        },
        0.0, half_pi, 1e-12);
    return I1 + I2;
}

// Piecewise Chebyshev proxy of x -> scaled_besselk(T, x) on [x_lo, x_hi].
// Panels split until the trailing coefficients drop below tol, which tracks
// the oscillation wavelength ~ 2 pi x / T in the region x << T.
class BesselTable {
public:
    BesselTable() = default;

    BesselTable(double T, double x_lo, double x_hi, double tol = 1e-11,
                int degree = 16)
        : T_(std::abs(T)), x_lo_(x_lo), x_hi_(x_hi) {
        if (!(x_lo > 0.0) || !(x_hi > x_lo))
            throw std::invalid_argument("BesselTable needs 0 < x_lo < x_hi");
        build(x_lo, x_hi, tol, degree, 0);
        breaks_.reserve(panels_.size());
        for (const auto& p : panels_) breaks_.push_back(p.b);
    }

    double T() const { return T_; }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    size_t panel_count() const { return panels_.size(); }

    // Beyond x_hi the kernel is below the table tolerance by construction
    // of the caller's truncation range, so 0 is the honest answer there.
    double operator()(double x) const {
        if (x > x_hi_) return 0.0;
        if (!(x >= x_lo_))
            throw std::domain_error("BesselTable evaluated below x_lo");
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
        size_t i = static_cast<size_t>(it - breaks_.begin());
        if (i >= panels_.size()) i = panels_.size() - 1;
        return panels_[i].eval(x);
    }

private:
    void build(double a, double b, double tol, int degree, int depth) {
        auto f = [&](double x) { return scaled_besselk(T_, x); };
        ChebPanel p = ChebPanel::fit(f, a, b, degree);
        if (p.tail_estimate() <= tol || depth >= 40) {
            panels_.push_back(std::move(p));
            return;
        }
        double m = 0.5 * (a + b);
        build(a, m, tol, degree, depth + 1);
        build(m, b, tol, degree, depth + 1);
    }

    double T_ = 0.0, x_lo_ = 0.0, x_hi_ = 0.0;
    std::vector<ChebPanel> panels_;
    std::vector<double> breaks_;
};

// Fourier coefficients of an eigenfunction with parameter T decay like
// exp(T pi/2 - ...) past x = T; this range keeps every discarded term
// below tol relative to the transition scale.
inline double bessel_argument_cutoff(double T, double tol) {
    return T + 4.0 * std::cbrt(std::max(T, 1.0)) + 2.0 * std::log(1.0 / tol) +
           10.0;
}

} // namespace dmf
