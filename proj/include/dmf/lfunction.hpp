#pragma once
// Critical-line machinery for the Hecke L-functions of the dihedral family:
// partial Dirichlet sums, smoothed approximate functional equation with a
// numerically determined root number, second-moment averages, and the
// prime-power coefficients of -L'/L.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"
#include "gammafn.hpp"
#include "quadfield.hpp"
#include "util.hpp"

namespace dmf {

struct AfeOptions {
  double contour_eps = 0.05;   // real part of the shifted Mellin contour
  double contour_step = 0.01;  // trapezoid step; must stay well below contour_eps
  double contour_height = 0.0; // truncation |Im u| <= height; 0 selects max(8, log^2 T)
  double gauss_scale = 1.0;    // c in the smoothing factor exp(c u^2)
  double length_scale = 1.0;   // multiplier applied to the default series length
};

inline double contour_truncation(double T, const AfeOptions& opt) {
  if (opt.contour_height > 0.0) return opt.contour_height;
  const double lg = std::log(std::max(T, 3.0));
  return std::max(8.0, lg * lg);
}

// Series length for the smoothed functional equation.  The weight decays like
// exp(-log^2(y/C) / (4c)) past the conductor scale C = sqrt(q)(T+|t|+1)/(2pi),
// so the cutoff must sit at C * exp(2 sqrt(c S)) to push the tail below
// exp(-S); S = 18 leaves the tail near 1e-6 after the divisor-sum factor.
inline std::int64_t afe_series_length(std::int64_t q, double T, double t,
                                      const AfeOptions& opt) {
  const double cond =
      std::sqrt(static_cast<double>(q)) * (std::abs(T) + std::abs(t) + 1.0) /
      (2.0 * 3.14159265358979323846);
  const double slack = std::exp(2.0 * std::sqrt(opt.gauss_scale * 18.0));
  const double n0 = cond * slack * opt.length_scale;
  if (!(n0 < 9.0e15)) throw std::overflow_error("afe series length overflows");
  return std::max<std::int64_t>(32, static_cast<std::int64_t>(std::ceil(n0)));
}

// Coefficient span a caller must provide: the root-number determination
// doubles the working length as a stability check.
inline std::int64_t afe_required_nmax(const FieldContext& F, std::int64_t k,
                                      double t, const AfeOptions& opt = {}) {
  return 2 * afe_series_length(F.q, spectral_parameter(F, k), t, opt);
}

// V_{k,t}(y) = (1/2pi) int F(eps+iv) y^{-(eps+iv)} dv with
// F(u) = exp(c u^2)/u * L_inf(1/2+it+u)/L_inf(1/2+it).
// Samples are taken once; lookups interpolate a dense log-y grid.
class VWeight {
 public:
  VWeight(std::int64_t q, double T, double t, const AfeOptions& opt,
          double y_lo, double y_hi)
      : step_(opt.contour_step) {
    if (!(y_lo > 0.0) || !(y_hi > y_lo))
      throw std::invalid_argument("weight table range must satisfy 0 < y_lo < y_hi");
    const double lam = contour_truncation(T, opt);
    const int n = static_cast<int>(lam / step_);
    const cplx s(0.5, t);
    const cplx base = log_gamma_factor(q, T, s);
    us_.reserve(2 * n + 1);
    fs_.reserve(2 * n + 1);
    for (int j = -n; j <= n; ++j) {
      const cplx u(opt.contour_eps, j * step_);
      const cplx f = std::exp(log_gamma_factor(q, T, s + u) - base) *
                     std::exp(opt.gauss_scale * u * u) / u;
      us_.push_back(u);
      fs_.push_back(f);
    }
    ly0_ = std::log(y_lo) - 0.25;
    const double ly1 = std::log(y_hi) + 0.25;
    std::int64_t pts = static_cast<std::int64_t>((ly1 - ly0_) / 0.002) + 8;
    pts = std::clamp<std::int64_t>(pts, 512, 16384);
    dly_ = (ly1 - ly0_) / static_cast<double>(pts - 1);
    grid_.assign(static_cast<std::size_t>(pts), cplx(0.0, 0.0));
    // y^{-u} at consecutive grid points differ by the fixed factor e^{-u dly},
    // so each contour node sweeps the grid with one multiply per point.
    for (std::size_t j = 0; j < us_.size(); ++j) {
      const cplx ratio = std::exp(-us_[j] * dly_);
      cplx phase = fs_[j] * std::exp(-us_[j] * ly0_);
      for (auto& g : grid_) {
        g += phase;
        phase *= ratio;
      }
    }
    const double scale = step_ / (2.0 * 3.14159265358979323846);
    for (auto& g : grid_) g *= scale;
  }

  // Straight trapezoid sum; used for spot checks and off-grid arguments.
  cplx direct(double y) const {
    if (!(y > 0.0)) throw std::invalid_argument("weight argument must be positive");
    const double ly = std::log(y);
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < us_.size(); ++j)
      acc += fs_[j] * std::exp(-us_[j] * ly);
    return acc * (step_ / (2.0 * 3.14159265358979323846));
  }

  cplx operator()(double y) const {
    const double ly = std::log(y);
    double p = (ly - ly0_) / dly_;
    const auto npts = static_cast<std::int64_t>(grid_.size());
    if (p < 1.0 || p > static_cast<double>(npts - 3)) return direct(y);
    std::int64_t i = static_cast<std::int64_t>(p);
    i = std::clamp<std::int64_t>(i, 1, npts - 3);
    const double x = p - static_cast<double>(i);
    // four-point Lagrange on the uniform log grid
    const double xm = x + 1.0, x0 = x, x1 = x - 1.0, x2 = x - 2.0;
    const double wm = -x0 * x1 * x2 / 6.0;
    const double w0 = xm * x1 * x2 / 2.0;
    const double w1 = -xm * x0 * x2 / 2.0;
    const double w2 = xm * x0 * x1 / 6.0;
    return wm * grid_[static_cast<std::size_t>(i - 1)] +
           w0 * grid_[static_cast<std::size_t>(i)] +
           w1 * grid_[static_cast<std::size_t>(i + 1)] +
           w2 * grid_[static_cast<std::size_t>(i + 2)];
  }

 private:
  double step_;
  std::vector<cplx> us_, fs_;
  double ly0_ = 0.0, dly_ = 1.0;
  std::vector<cplx> grid_;
};

inline cplx dirichlet_partial(const CoeffTable& tbl, cplx s, std::int64_t X) {
  if (X < 1) throw std::invalid_argument("partial sum length must be at least 1");
  if (X > tbl.nmax())
    throw std::invalid_argument("coefficient table too short for requested partial sum");
  cplx acc(0.0, 0.0);
  for (std::int64_t n = 1; n <= X; ++n) {
    const double an = tbl.a[static_cast<std::size_t>(n)];
    if (an != 0.0) acc += an * std::exp(-s * std::log(static_cast<double>(n)));
  }
  return acc;
}

// Partial Euler product over p <= pmax at s; local factors
// (1 - a(p)p^{-s} + chi(p)p^{-2s})^{-1}, degenerating to (1 - q^{-s})^{-1}
// at the ramified prime.
inline cplx euler_product_partial(const FieldContext& F, const CoeffTable& tbl,
                                  cplx s, std::int64_t pmax) {
  if (pmax > tbl.nmax())
    throw std::invalid_argument("coefficient table too short for requested Euler product");
  cplx prod(1.0, 0.0);
  for (std::int64_t p : primes_up_to(pmax)) {
    const cplx ps = std::exp(-s * std::log(static_cast<double>(p)));
    cplx local;
    if (p == F.q) {
      local = 1.0 - ps;
    } else {
      const double ap = tbl.a[static_cast<std::size_t>(p)];
      local = 1.0 - ap * ps + static_cast<double>(F.chi(p)) * ps * ps;
    }
    prod /= local;
  }
  return prod;
}

namespace detail {

// J(X) = sum a(n) n^{-1/2} Re V0(n/X); returns the partial value at n <= N
// alongside the full value at n <= 2N for the refinement-stability check.
inline std::pair<double, double> smoothed_pair(const CoeffTable& tbl,
                                               const VWeight& V0, double X,
                                               std::int64_t N) {
  double atN = 0.0, at2N = 0.0;
  for (std::int64_t n = 1; n <= 2 * N; ++n) {
    const double an = tbl.a[static_cast<std::size_t>(n)];
    if (an == 0.0) continue;
    const double term =
        an / std::sqrt(static_cast<double>(n)) * V0(static_cast<double>(n) / X).real();
    at2N += term;
    if (n <= N) atN += term;
  }
  return {atN, at2N};
}

inline double omega_from_smoothed_sums(const CoeffTable& tbl, const VWeight& V0,
                                       std::int64_t N) {
  const auto j_half = smoothed_pair(tbl, V0, 0.5, N);
  const auto j_one = smoothed_pair(tbl, V0, 1.0, N);
  const auto j_two = smoothed_pair(tbl, V0, 2.0, N);
  const auto ratio_at = [&](double jh, double j1, double j2) {
    const double den = jh - j1;
    if (std::abs(den) <= 1e-9 * (std::abs(jh) + std::abs(j1) + 1.0))
      throw std::runtime_error(
          "root number ill-conditioned: smoothing-shift denominator nearly cancels");
    return (j1 - j2) / den;
  };
  const double r1 = ratio_at(j_half.first, j_one.first, j_two.first);
  const double r2 = ratio_at(j_half.second, j_one.second, j_two.second);
  if (std::abs(r1 - r2) > 0.1 || std::abs(std::abs(r1) - 1.0) > 0.2)
    throw std::runtime_error("root number unstable under series refinement");
  return r1 > 0.0 ? 1.0 : -1.0;
}

}  // namespace detail

// Functional-equation sign, solved from smoothed sums at shifted cutoffs:
// L(1/2) = J(X) + w J(1/X) for every X forces
// w = (J(1)-J(2)) / (J(1/2)-J(1)).
inline double root_number(const FieldContext& F, const CoeffTable& tbl,
                          const AfeOptions& opt = {}) {
  const double T = tbl.T;
  const std::int64_t N = afe_series_length(F.q, T, 0.0, opt);
  if (tbl.nmax() < 2 * N)
    throw std::invalid_argument(
        "coefficient table too short: root number needs indices through " +
        std::to_string(2 * N) + ", have " + std::to_string(tbl.nmax()));
  const VWeight V0(F.q, T, 0.0, opt, 0.5, 4.0 * static_cast<double>(N) + 4.0);
  return detail::omega_from_smoothed_sums(tbl, V0, N);
}

struct LValueResult {
  cplx value;            // L(1/2 + it)
  double omega;          // functional-equation sign
  cplx eta;              // effective sign in front of the reflected sum
  std::int64_t series_length;
};

inline LValueResult afe_lvalue(const FieldContext& F, const CoeffTable& tbl,
                               double t, const AfeOptions& opt = {}) {
  const double T = tbl.T;
  if (!(std::abs(t) <= 0.5 * T))
    throw std::domain_error(
        "critical-line offset out of range: |t| must not exceed half the spectral parameter");
  const std::int64_t N = afe_series_length(F.q, T, t, opt);
  if (tbl.nmax() < 2 * N)
    throw std::invalid_argument(
        "coefficient table too short: evaluation needs indices through " +
        std::to_string(2 * N) + ", have " + std::to_string(tbl.nmax()));
  const VWeight V0(F.q, T, 0.0, opt, 0.5, 4.0 * static_cast<double>(N) + 4.0);
  const double omega = detail::omega_from_smoothed_sums(tbl, V0, N);

  cplx eta(omega, 0.0);
  cplx s1(0.0, 0.0), s2(0.0, 0.0);
  if (t == 0.0) {
    for (std::int64_t n = 1; n <= N; ++n) {
      const double an = tbl.a[static_cast<std::size_t>(n)];
      if (an == 0.0) continue;
      s1 += an / std::sqrt(static_cast<double>(n)) * V0(static_cast<double>(n));
    }
    s2 = s1;
  } else {
    const VWeight Vp(F.q, T, t, opt, 1.0, static_cast<double>(N) + 4.0);
    const VWeight Vm(F.q, T, -t, opt, 1.0, static_cast<double>(N) + 4.0);
    eta = omega * std::exp(log_gamma_factor(F.q, T, cplx(0.5, -t)) -
                           log_gamma_factor(F.q, T, cplx(0.5, t)));
    for (std::int64_t n = 1; n <= N; ++n) {
      const double an = tbl.a[static_cast<std::size_t>(n)];
      if (an == 0.0) continue;
      const double ln = std::log(static_cast<double>(n));
      const double amp = an / std::sqrt(static_cast<double>(n));
      s1 += amp * std::exp(cplx(0.0, -t * ln)) * Vp(static_cast<double>(n));
      s2 += amp * std::exp(cplx(0.0, t * ln)) * Vm(static_cast<double>(n));
    }
  }
  return LValueResult{s1 + eta * s2, omega, eta, N};
}

struct MomentResult {
  double average = 0.0;
  std::vector<std::pair<std::int64_t, double>> per_k;  // (k, |L(1/2+it)|^2)
};

// (1/K) sum_{K < k <= 2K} |L(1/2+it, phi_k)|^2, one shared enumeration pass.
inline MomentResult second_moment(const FieldContext& F, std::int64_t K, double t,
                                  const AfeOptions& opt = {},
                                  unsigned threads = 0) {
  if (K < 1) throw std::invalid_argument("moment range must be at least 1");
  std::vector<std::int64_t> ks(static_cast<std::size_t>(K));
  std::vector<std::int64_t> need(static_cast<std::size_t>(K));
  std::int64_t nmax = 0;
  for (std::int64_t i = 0; i < K; ++i) {
    ks[static_cast<std::size_t>(i)] = K + 1 + i;
    need[static_cast<std::size_t>(i)] = afe_required_nmax(F, K + 1 + i, t, opt);
    nmax = std::max(nmax, need[static_cast<std::size_t>(i)]);
  }
  if (!(std::abs(t) <= 0.5 * spectral_parameter(F, K + 1)))
    throw std::domain_error(
        "critical-line offset out of range: |t| must not exceed half the spectral parameter");
  const auto tables = make_coeff_tables(F, ks, nmax);
  MomentResult out;
  out.per_k.resize(tables.size());
  std::vector<std::string> failures(tables.size());
  parallel_for(
      tables.size(),
      [&](std::size_t i) {
        try {
          const auto r = afe_lvalue(F, tables[i], t, opt);
          out.per_k[i] = {tables[i].k, std::norm(r.value)};
        } catch (const std::exception& e) {
          failures[i] = "k=" + std::to_string(tables[i].k) + ": " + e.what();
        }
      },
      threads);
  for (const auto& f : failures)
    if (!f.empty()) throw std::runtime_error("moment evaluation failed at " + f);
  double acc = 0.0;
  for (const auto& kv : out.per_k) acc += kv.second;
  out.average = acc / static_cast<double>(K);
  return out;
}

// Coefficients b(n) of -L'/L(s) = sum b(n) n^{-s}: supported on prime powers,
// b(p) = (log p) a(p)^2, and for j >= 2
//   b(p^j) = (log p) (1 + chi(p)^j + s_j - 2[j even]),
// where s_j is the j-th power sum of the Satake pair of the doubled-index
// form: s_0 = 2, s_1 = a_{2k}(p), s_j = a_{2k}(p) s_{j-1} - chi(p) s_{j-2}.
// At the ramified prime every power contributes log q.
inline std::vector<double> log_deriv_coeffs(const FieldContext& F,
                                            const CoeffTable& tbl_k,
                                            const CoeffTable& tbl_2k,
                                            std::int64_t N) {
  if (tbl_2k.k != 2 * tbl_k.k)
    throw std::invalid_argument(
        "log-derivative expansion needs the doubled character index table");
  if (N < 1) throw std::invalid_argument("coefficient span must be at least 1");
  if (tbl_k.nmax() < N)
    throw std::invalid_argument("coefficient table too short for requested span");
  const std::int64_t root = isqrt64(N);
  if (tbl_2k.nmax() < root)
    throw std::invalid_argument(
        "doubled-index coefficient table too short for requested span");
  std::vector<double> b(static_cast<std::size_t>(N) + 1, 0.0);
  for (std::int64_t p : primes_up_to(N)) {
    const double lp = std::log(static_cast<double>(p));
    if (p == F.q) {
      for (std::int64_t pj = p; pj <= N; pj = checked_mul(pj, p)) {
        b[static_cast<std::size_t>(pj)] = lp;
        if (pj > N / p) break;
      }
      continue;
    }
    const double ap = tbl_k.a[static_cast<std::size_t>(p)];
    b[static_cast<std::size_t>(p)] = lp * ap * ap;
    if (p > root) continue;
    const double a2 = tbl_2k.a[static_cast<std::size_t>(p)];
    const double chi = static_cast<double>(F.chi(p));
    double s_prev = 2.0, s_cur = a2;
    std::int64_t pj = p;
    for (int j = 2;; ++j) {
      if (pj > N / p) break;
      pj *= p;
      const double s_next = a2 * s_cur - chi * s_prev;
      s_prev = s_cur;
      s_cur = s_next;
      const double chij = (j % 2 == 0) ? 1.0 : chi;
      const double even = (j % 2 == 0) ? 2.0 : 0.0;
      b[static_cast<std::size_t>(pj)] = lp * (1.0 + chij + s_cur - even);
    }
  }
  return b;
}

// B(N) = sum w(n/N) b(n) over the smoothing window (N, 2N); w is the caller's
// bump, evaluated at n/N.
template <typename Bump>
inline double log_deriv_window_sum(const FieldContext& F, const CoeffTable& tbl_k,
                                   const CoeffTable& tbl_2k, std::int64_t N,
                                   Bump&& w) {
  const auto b = log_deriv_coeffs(F, tbl_k, tbl_2k, 2 * N);
  double acc = 0.0;
  for (std::int64_t n = N + 1; n < 2 * N; ++n) {
    const double bn = b[static_cast<std::size_t>(n)];
    if (bn != 0.0)
      acc += w(static_cast<double>(n) / static_cast<double>(N)) * bn;
  }
  return acc;
}

// Coefficient-level check of the factorization
//   (1 + q^{-s}) zeta(2s) sum a_k(n)^2 n^{-s} = zeta(s) L(s,chi) L(s,phi_2k):
// returns the largest absolute defect between the Dirichlet coefficients of
// the two sides through nmax.
inline double rankin_selberg_defect(const FieldContext& F, const CoeffTable& tbl_k,
                                    const CoeffTable& tbl_2k, std::int64_t nmax) {
  if (tbl_2k.k != 2 * tbl_k.k)
    throw std::invalid_argument(
        "factorization check needs the doubled character index table");
  if (tbl_k.nmax() < nmax || tbl_2k.nmax() < nmax)
    throw std::invalid_argument("coefficient tables too short for requested span");
  const std::size_t M = static_cast<std::size_t>(nmax);
  std::vector<double> sq(M + 1, 0.0);
  for (std::int64_t n = 1; n <= nmax; ++n) {
    const double a = tbl_k.a[static_cast<std::size_t>(n)];
    sq[static_cast<std::size_t>(n)] = a * a;
  }
  // left side: convolve a^2 with zeta(2s) (squares), then with (1 + q^{-s})
  std::vector<double> lhs(M + 1, 0.0);
  for (std::int64_t d = 1; d * d <= nmax; ++d)
    for (std::int64_t m = 1; m * d * d <= nmax; ++m)
      lhs[static_cast<std::size_t>(m * d * d)] += sq[static_cast<std::size_t>(m)];
  std::vector<double> lhs2(lhs);
  for (std::int64_t n = F.q; n <= nmax; n += F.q)
    if (n % F.q == 0) lhs2[static_cast<std::size_t>(n)] += lhs[static_cast<std::size_t>(n / F.q)];
  // right side: (1 * chi) convolved with a_{2k}
  std::vector<double> zl(M + 1, 0.0);
  for (std::int64_t d = 1; d <= nmax; ++d) {
    const double c = static_cast<double>(F.chi(d));
    if (c == 0.0) continue;
    for (std::int64_t m = d; m <= nmax; m += d) zl[static_cast<std::size_t>(m)] += c;
  }
  std::vector<double> rhs(M + 1, 0.0);
  for (std::int64_t d = 1; d <= nmax; ++d) {
    const double c = zl[static_cast<std::size_t>(d)];
    if (c == 0.0) continue;
    for (std::int64_t m = 1; m * d <= nmax; ++m)
      rhs[static_cast<std::size_t>(m * d)] += c * tbl_2k.a[static_cast<std::size_t>(m)];
  }
  double defect = 0.0;
  for (std::size_t n = 1; n <= M; ++n)
    defect = std::max(defect, std::abs(lhs2[n] - rhs[n]));
  return defect;
}

}  // namespace dmf
