#pragma once
// Angle-gap repulsion scans, the primitive-orbit decomposition of the ideal
// family, and a Monte-Carlo check of the large-sieve inequality for the
// angle characters.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quadfield.hpp"
#include "util.hpp"

namespace dmf {

struct AngleRecord {
  IdealRep ideal;
  double normalized_angle = 0.0;  // t/(2 log eps), reduced mod 1 into [0,1)
  double dist_to_int = 0.0;       // min_n |t/(2 log eps) - n|, in [0, 1/2]
};

// The canonical generator has angle in (-L, L], so the angle class vanishes
// exactly when the generator is rational (b = 0) or a rational multiple of
// sqrt(q) (2a + b = 0); the test is integer-exact.
inline bool zero_angle_class(const IdealRep& r) {
  return r.b == 0 || 2 * r.a + r.b == 0;
}

inline AngleRecord make_angle_record(const FieldContext& F, const IdealRep& r) {
  AngleRecord rec;
  rec.ideal = r;
  const double x = r.angle / (2.0 * F.log_eps);  // in (-1/2, 1/2]
  rec.normalized_angle = x < 0.0 ? x + 1.0 : x;
  rec.dist_to_int = std::min(std::abs(x), 0.5);
  return rec;
}

struct AngleGapResult {
  double c_min = 0.0;  // min over nonzero-angle ideals of sqrt(norm) * dist
  IdealRep argmin;
  std::vector<AngleRecord> records;  // every scanned ideal, scan order
};

inline AngleGapResult angle_gap_scan(const FieldContext& F, std::int64_t N) {
  if (N < 2) throw std::invalid_argument("scan bound must be at least 2");
  AngleGapResult out;
  out.records.reserve(64);
  bool have = false;
  for (const IdealRep& r : enumerate_ideals(F, N)) {
    AngleRecord rec = make_angle_record(F, r);
    if (!zero_angle_class(r)) {
      const double v =
          std::sqrt(static_cast<double>(r.norm_abs)) * rec.dist_to_int;
      if (!have || v < out.c_min) {
        out.c_min = v;
        out.argmin = r;
        have = true;
      }
    }
    out.records.push_back(rec);
  }
  if (!have)
    throw std::runtime_error("no ideal with nonzero angle class below the bound");
  return out;
}

struct PairGapResult {
  double c_min = 0.0;  // min over unequal-angle pairs of sqrt(n1 n2) * ||dt||
  IdealRep first, second;
  std::int64_t pairs_checked = 0;
  std::int64_t pairs_skipped_equal = 0;
  // worst defect of t(a * conj(b)) = t(a) - t(b) mod 2L over all pairs
  double max_additivity_defect = 0.0;
};

// Exhaustive pair scan; every pair is also pushed through the product
// reduction c = a * conj(b) to confirm the pair gap equals the single-ideal
// gap of c.
inline PairGapResult pairwise_gap_scan(const FieldContext& F, std::int64_t N) {
  if (N < 2) throw std::invalid_argument("scan bound must be at least 2");
  if (N > 500)
    throw std::invalid_argument("pair scan bound capped at 500 (quadratic cost)");
  const auto ideals = enumerate_ideals(F, N);
  const double twoL = 2.0 * F.log_eps;
  PairGapResult out;
  bool have = false;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    for (std::size_t j = i + 1; j < ideals.size(); ++j) {
      const IdealRep& A = ideals[i];
      const IdealRep& B = ideals[j];
      double dt = (A.angle - B.angle) / twoL;
      dt -= std::round(dt);
      QuadInt prod = F.mul(QuadInt{A.a, A.b}, FieldContext::conj(QuadInt{B.a, B.b}));
      const double tc = F.angle(F.canonicalize(prod));
      double defect = (tc - (A.angle - B.angle)) / twoL;
      defect = std::abs(defect - std::round(defect)) * twoL;
      out.max_additivity_defect = std::max(out.max_additivity_defect, defect);
      if (std::abs(dt) < 1e-15) {
        ++out.pairs_skipped_equal;
        continue;
      }
      ++out.pairs_checked;
      const double v = std::sqrt(static_cast<double>(A.norm_abs) *
                                 static_cast<double>(B.norm_abs)) *
                       std::abs(dt);
      if (!have || v < out.c_min) {
        out.c_min = v;
        out.first = A;
        out.second = B;
        have = true;
      }
    }
  }
  if (!have) throw std::runtime_error("no unequal-angle pair below the bound");
  return out;
}

struct OrbitGroup {
  QuadInt primitive;             // canonical generator of the primitive member
  std::int64_t primitive_norm = 0;
  std::vector<std::size_t> members;  // indices into OrbitStructure::ideals
};

struct OrbitStructure {
  std::int64_t scan_bound = 0;
  std::vector<IdealRep> ideals;
  std::vector<OrbitGroup> groups;
};

// Groups ideals by equal angle inside each norm-sign class.  Equality is
// decided by the integer primitive part of the generator (re-canonicalized),
// never by floating-point angle comparison.  The claimed structure - each
// group is exactly {(m) a0 : m^2 n0 <= bound} over a unique primitive a0,
// and distinct primitives in a class have distinct angles - is asserted
// hard: a violation throws std::logic_error.
inline OrbitStructure primitive_orbit_structure(const FieldContext& F,
                                                std::int64_t N) {
  if (N < 1) throw std::invalid_argument("scan bound must be at least 1");
  OrbitStructure out;
  out.scan_bound = N;
  out.ideals = enumerate_ideals(F, N);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < out.ideals.size(); ++i) {
    const IdealRep& r = out.ideals[i];
    const std::int64_t g = gcd64(r.a, r.b);
    if (g <= 0) throw std::logic_error("orbit grouping: degenerate generator");
    QuadInt prim = F.canonicalize(QuadInt{r.a / g, r.b / g});
    const auto key = std::make_pair(prim.a, prim.b);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.groups.size());
      OrbitGroup grp;
      grp.primitive = prim;
      grp.primitive_norm = std::abs(F.norm(prim));
      grp.members.push_back(i);
      out.groups.push_back(std::move(grp));
    } else {
      out.groups[it->second].members.push_back(i);
    }
  }

  for (auto& grp : out.groups) {
    std::sort(grp.members.begin(), grp.members.end(),
              [&](std::size_t x, std::size_t y) {
                return out.ideals[x].norm_abs < out.ideals[y].norm_abs;
              });
    const std::int64_t n0 = grp.primitive_norm;
    const std::int64_t expect = isqrt64(N / n0);
    if (static_cast<std::int64_t>(grp.members.size()) != expect)
      throw std::logic_error("orbit grouping: group size disagrees with sqrt(bound/norm)");
    std::int64_t primitives_seen = 0;
    for (std::size_t m = 0; m < grp.members.size(); ++m) {
      const IdealRep& r = out.ideals[grp.members[m]];
      const auto mult = static_cast<std::int64_t>(m) + 1;
      if (r.norm_abs != checked_mul(checked_mul(mult, mult), n0))
        throw std::logic_error("orbit grouping: member norm is not m^2 * primitive norm");
      if (r.a != checked_mul(mult, grp.primitive.a) ||
          r.b != checked_mul(mult, grp.primitive.b))
        throw std::logic_error("orbit grouping: member generator is not m * primitive");
      if (r.primitive) ++primitives_seen;
    }
    if (primitives_seen != 1 || !out.ideals[grp.members.front()].primitive)
      throw std::logic_error("orbit grouping: group lacks a unique primitive member");
  }

  // distinct primitives within a norm-sign class must carry distinct angles
  std::vector<std::pair<double, bool>> prim_angles;
  for (const auto& grp : out.groups) {
    const IdealRep& r = out.ideals[grp.members.front()];
    prim_angles.emplace_back(r.angle, r.norm_positive);
  }
  std::sort(prim_angles.begin(), prim_angles.end());
  for (std::size_t i = 1; i < prim_angles.size(); ++i) {
    if (prim_angles[i].second == prim_angles[i - 1].second &&
        std::abs(prim_angles[i].first - prim_angles[i - 1].first) < 1e-9)
      throw std::logic_error("orbit grouping: two primitives share an angle class");
  }
  return out;
}

struct LargeSieveReport {
  std::int64_t K = 0, N = 0, trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::vector<double> ratios;  // one per trial
};

// Monte-Carlo ratio check of
//   sum_{k<=K} |sum_{n(a)<=N} X_k(a) c(a) n(a)^{-1/2}|^2
//     <= C (K+N) sum_groups (sum_members |c| n^{-1/2})^2
// with X_k(a) = exp(i pi k t_a / log eps) and coefficients drawn uniformly
// from the unit disk.  The draw is reproducible: raw 53-bit reals from a
// seeded mt19937_64, one (radius, angle) pair per ideal in scan order.
inline LargeSieveReport large_sieve_check(const FieldContext& F, std::int64_t K,
                                          std::int64_t N, std::int64_t trials,
                                          std::uint64_t seed) {
  if (K < 1 || N < 1) throw std::invalid_argument("family sizes must be positive");
  if (K > 200 || N > 200)
    throw std::invalid_argument("family sizes capped at 200 (quadratic cost)");
  if (trials < 1) throw std::invalid_argument("trial count must be positive");
  const auto orbits = primitive_orbit_structure(F, N);
  const auto& ideals = orbits.ideals;
  const std::size_t m = ideals.size();

  std::vector<std::complex<double>> step(m);
  std::vector<double> invroot(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double th = 3.14159265358979323846 * ideals[i].angle / F.log_eps;
    step[i] = std::complex<double>(std::cos(th), std::sin(th));
    invroot[i] = 1.0 / std::sqrt(static_cast<double>(ideals[i].norm_abs));
  }

  std::mt19937_64 gen(seed);
  const auto unit = [&gen]() {
    return static_cast<double>(gen() >> 11) * (1.0 / 9007199254740992.0);
  };

  LargeSieveReport rep;
  rep.K = K;
  rep.N = N;
  rep.trials = trials;
  rep.seed = seed;
  rep.ratios.reserve(static_cast<std::size_t>(trials));
  std::vector<std::complex<double>> c(m), phase(m);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    for (std::size_t i = 0; i < m; ++i) {
      const double r = std::sqrt(unit());
      const double th = 2.0 * 3.14159265358979323846 * unit();
      c[i] = std::complex<double>(r * std::cos(th), r * std::sin(th));
      phase[i] = std::complex<double>(1.0, 0.0);
    }
    double lhs = 0.0;
    for (std::int64_t k = 1; k <= K; ++k) {
      std::complex<double> s(0.0, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        phase[i] *= step[i];
        s += phase[i] * c[i] * invroot[i];
      }
      lhs += std::norm(s);
    }
    double rhs = 0.0;
    for (const auto& grp : orbits.groups) {
      double s = 0.0;
      for (std::size_t idx : grp.members) s += std::abs(c[idx]) * invroot[idx];
      rhs += s * s;
    }
    rhs *= static_cast<double>(K + N);
    rep.ratios.push_back(lhs / rhs);
    rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
    rep.mean_ratio += lhs / rhs;
  }
  rep.mean_ratio /= static_cast<double>(trials);
  return rep;
}

}  // namespace dmf
