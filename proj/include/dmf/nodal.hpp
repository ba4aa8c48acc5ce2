#pragma once
// Restriction of an eigenform to vertical geodesic segments: sign-change
// counts with refined zero ordinates, restricted L1/L2 norms, the
// oscillation functional M, and the resulting counting inequality chain.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "waveform.hpp"

namespace dmf {

struct GeodesicSegment {
  double a = 1.0;
  double b = 2.0;  // the segment {iy : a < y < b}
};

inline void validate_segment(const GeodesicSegment& seg) {
  if (!(seg.a > 0.0) || !(seg.b > seg.a))
    throw std::invalid_argument("segment must satisfy 0 < a < b");
}

inline std::int64_t minimum_samples(const FormHandle& h,
                                    const GeodesicSegment& seg) {
  return static_cast<std::int64_t>(
      std::ceil(20.0 * h.T * (seg.b - seg.a) / seg.a));
}

struct SignChangeResult {
  std::int64_t count = 0;
  std::vector<double> zeros;  // strictly increasing, inside (a, b)
};

namespace detail {

inline SignChangeResult scan_sign_changes(const FormHandle& h,
                                          const GeodesicSegment& seg,
                                          std::int64_t samples) {
  const double la = std::log(seg.a), lb = std::log(seg.b);
  const double dl = (lb - la) / static_cast<double>(samples);
  SignChangeResult out;
  double y_prev = seg.a;
  double f_prev = h.eval(0.0, y_prev);
  for (std::int64_t j = 1; j <= samples; ++j) {
    const double y = j == samples ? seg.b : std::exp(la + dl * j);
    const double f = h.eval(0.0, y);
    if ((f_prev < 0.0 && f > 0.0) || (f_prev > 0.0 && f < 0.0)) {
      double lo = y_prev, hi = y, flo = f_prev;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h.eval(0.0, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.zeros.push_back(0.5 * (lo + hi));
      ++out.count;
    }
    y_prev = y;
    f_prev = f;
  }
  return out;
}

}  // namespace detail

// Sign changes of y -> phi(iy) on the segment, each bracket refined by
// bisection to 1e-10 in y.  The count is recomputed on a doubled grid; a
// mismatch aborts rather than returning an undersampled answer.
inline SignChangeResult sign_changes(const FormHandle& h,
                                     const GeodesicSegment& seg,
                                     std::int64_t samples) {
  validate_segment(seg);
  if (samples < std::max<std::int64_t>(minimum_samples(h, seg), 8))
    throw std::invalid_argument(
        "sample count below the oscillation resolution floor");
  SignChangeResult base = detail::scan_sign_changes(h, seg, samples);
  SignChangeResult fine = detail::scan_sign_changes(h, seg, 2 * samples);
  if (base.count != fine.count)
    throw std::runtime_error(
        "sign-change count unstable under sample doubling; raise samples");
  return fine;
}

struct RestrictedNorms {
  double L1 = 0.0;  // int |phi(iy)| dy/y
  double L2 = 0.0;  // (int |phi(iy)|^2 dy/y)^{1/2}
  std::vector<double> panel_integrals;  // signed int phi dy/y between zeros
};

// The zeros split the segment into single-sign panels, so the L1 mass is the
// sum of |signed panel integrals| and the absolute value never meets the
// quadrature.
inline RestrictedNorms restricted_norms(const FormHandle& h,
                                        const GeodesicSegment& seg,
                                        const std::vector<double>& zeros,
                                        double tol = 1e-9) {
  validate_segment(seg);
  std::vector<double> cuts;
  cuts.push_back(seg.a);
  for (double z : zeros)
    if (z > seg.a && z < seg.b) cuts.push_back(z);
  cuts.push_back(seg.b);
  RestrictedNorms out;
  const auto f1 = [&](double y) { return h.eval(0.0, y) / y; };
  const auto f2 = [&](double y) {
    const double v = h.eval(0.0, y);
    return v * v / y;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double piece =
        integrate_adaptive(f1, cuts[i], cuts[i + 1], tol / cuts.size());
    out.panel_integrals.push_back(piece);
    out.L1 += std::abs(piece);
    out.L2 += integrate_adaptive(f2, cuts[i], cuts[i + 1], tol / cuts.size());
  }
  out.L2 = std::sqrt(out.L2);
  return out;
}

// M = (1/norm) sup_{a<u<v<b} |int_u^v phi(iy) dy/y|.  Between consecutive
// zeros the antiderivative is monotone, so its range over the whole segment
// is the spread of the partial sums of the panel integrals; the sup is exact
// once the zeros are known.
inline double m_functional(const std::vector<double>& panel_integrals,
                           double l2_norm) {
  if (!(l2_norm > 0.0))
    throw std::invalid_argument("surface norm must be positive");
  double run = 0.0, lo = 0.0, hi = 0.0;
  for (double piece : panel_integrals) {
    run += piece;
    lo = std::min(lo, run);
    hi = std::max(hi, run);
  }
  return (hi - lo) / l2_norm;
}

struct NodalReport {
  std::int64_t k = 0;
  double T = 0.0;
  GeodesicSegment segment;
  std::int64_t sign_change_count = 0;
  std::vector<double> zeros;
  double L1 = 0.0;
  double L2 = 0.0;
  double M = 0.0;
  double l2_norm = 0.0;          // full-surface L2 norm fed by the caller
  double chain_slack = 0.0;      // L1 / (M * l2_norm * (count+1)), <= 1
  std::int64_t lower_bound_floor = 0;  // floor(L1/(M*l2_norm)) - 1 <= count
  double restricted_ratio = 0.0;       // L2^2 / l2_norm^2
  std::int64_t genus = 0;              // area-formula metadata
  double nodal_domain_floor = 0.0;     // count/2 - genus + 1
};

// Genus bookkeeping from the documented area (pi/3)(q+1): metadata for the
// nodal-domain floor, not a computed topological invariant.
inline std::int64_t genus_from_area(std::int64_t q) { return 1 + (q + 1) / 12; }

inline NodalReport nodal_chain_report(const FormHandle& h,
                                      const GeodesicSegment& seg,
                                      double l2_norm,
                                      std::int64_t samples = 0) {
  validate_segment(seg);
  if (samples <= 0)
    samples = std::max<std::int64_t>(minimum_samples(h, seg), 512);
  NodalReport rep;
  rep.k = h.k;
  rep.T = h.T;
  rep.segment = seg;
  const SignChangeResult sc = sign_changes(h, seg, samples);
  rep.sign_change_count = sc.count;
  rep.zeros = sc.zeros;
  const RestrictedNorms rn = restricted_norms(h, seg, sc.zeros);
  rep.L1 = rn.L1;
  rep.L2 = rn.L2;
  rep.l2_norm = l2_norm;
  rep.M = m_functional(rn.panel_integrals, l2_norm);
  const double denom =
      rep.M * l2_norm * static_cast<double>(rep.sign_change_count + 1);
  rep.chain_slack = denom > 0.0 ? rep.L1 / denom : 0.0;
  if (rep.chain_slack > 1.0 + 1e-6)
    throw std::logic_error(
        "restricted-norm counting inequality violated; evaluation bug");
  rep.lower_bound_floor =
      static_cast<std::int64_t>(std::floor(rep.L1 / (rep.M * l2_norm))) - 1;
  rep.restricted_ratio = (rep.L2 / l2_norm) * (rep.L2 / l2_norm);
  rep.genus = genus_from_area(h.F->q);
  rep.nodal_domain_floor =
      0.5 * static_cast<double>(rep.sign_change_count) -
      static_cast<double>(rep.genus) + 1.0;
  return rep;
}

}  // namespace dmf
