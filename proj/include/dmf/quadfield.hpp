#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmf/util.hpp"

namespace dmf {

// Element a + b*w of the ring Z[w], w = (1+sqrt(q))/2, q = 1 mod 4.
struct QuadInt {
    int64_t a = 0;
    int64_t b = 0;
    bool operator==(const QuadInt&) const = default;
};

inline int64_t mod_pow(int64_t base, int64_t exp, int64_t mod) {
    __int128 r = 1, x = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) r = (r * x) % mod;
        x = (x * x) % mod;
        exp >>= 1;
    }
    return static_cast<int64_t>(r);
}

inline void validate_discriminant(int64_t q) {
    if (q <= 8)
        throw std::invalid_argument("q must exceed 8");
    if (q > 200)
        throw std::invalid_argument("q must be at most 200");
    if (!is_prime_u64(q))
        throw std::invalid_argument("q must be prime");
    if (q % 4 != 1)
        throw std::invalid_argument("q must be congruent to 1 mod 4");
}

struct FieldContext {
    int64_t q = 0;
    int64_t wsq = 0;          // w^2 = wsq + w, wsq = (q-1)/4
    QuadInt eps;              // fundamental unit, eps > 1
    int64_t eps_norm = 0;     // +-1
    QuadInt eps_inv;          // conj(eps)/norm(eps)
    double sqrt_q = 0.0;
    double w_re = 0.0;        // (1+sqrt(q))/2
    double w_co = 0.0;        // (1-sqrt(q))/2
    double log_eps = 0.0;     // regulator, half-period of the angle

    int64_t norm(QuadInt v) const {
        __int128 n = (__int128)v.a * v.a + (__int128)v.a * v.b
                   - (__int128)v.b * v.b * wsq;
        if (n > INT64_MAX || n < INT64_MIN)
            throw std::overflow_error("norm overflow");
        return static_cast<int64_t>(n);
    }

    QuadInt mul(QuadInt u, QuadInt v) const {
        int64_t bb = checked_mul(u.b, v.b);
        int64_t a = checked_add(checked_mul(u.a, v.a), checked_mul(bb, wsq));
        int64_t b = checked_add(checked_add(checked_mul(u.a, v.b),
                                            checked_mul(u.b, v.a)), bb);
        return {a, b};
    }

    static QuadInt conj(QuadInt v) { return {v.a + v.b, -v.b}; }
    static QuadInt neg(QuadInt v) { return {-v.a, -v.b}; }

    double embed_plus(QuadInt v) const { return v.a + v.b * w_re; }
    double embed_minus(QuadInt v) const { return v.a + v.b * w_co; }

    // t = log|alpha/conj(alpha)|, evaluated through the larger embedding so
    // that the log argument never underflows; |norm| supplies the other
    // factor exactly.
    double angle(QuadInt v) const {
        double f1 = std::abs(embed_plus(v));
        double f2 = std::abs(embed_minus(v));
        double ln = std::log(static_cast<double>(std::abs(norm(v))));
        if (f1 >= f2) return 2.0 * std::log(f1) - ln;
        return ln - 2.0 * std::log(f2);
    }

    // chi(n) = Legendre symbol (n|q); totally real quadratic character.
    int chi(int64_t n) const {
        int64_t r = ((n % q) + q) % q;
        if (r == 0) return 0;
        return mod_pow(r, (q - 1) / 2, q) == 1 ? 1 : -1;
    }

    // Unique associate with angle in (-L, L] and a fixed sign convention:
    // positive norm keeps 2a+b > 0, negative norm keeps b > 0.
    QuadInt canonicalize(QuadInt v) const {
        if (v.a == 0 && v.b == 0)
            throw std::domain_error("canonicalize of zero");
        for (int guard = 0;; ++guard) {
            if (guard > 256)
                throw std::runtime_error("canonicalize failed to settle");
            double t = angle(v);
            if (t > log_eps) v = mul(v, eps_inv);
            else if (t <= -log_eps) v = mul(v, eps);
            else break;
        }
        int64_t n = norm(v);
        if (n > 0) {
            if (2 * v.a + v.b <= 0) v = neg(v);
        } else {
            if (v.b <= 0) v = neg(v);
        }
        return v;
    }
};

inline FieldContext make_field(int64_t q) {
    validate_discriminant(q);
    FieldContext F;
    F.q = q;
    F.wsq = (q - 1) / 4;
    F.sqrt_q = std::sqrt(static_cast<double>(q));
    F.w_re = (1.0 + F.sqrt_q) / 2.0;
    F.w_co = (1.0 - F.sqrt_q) / 2.0;

    // Fundamental unit from the continued fraction of w.  The state tracks
    // (P + sqrt(q))/Q; convergents p/r of w give candidates (p-r) + r*w.
    int64_t s = isqrt64(q);
    int64_t P = 1, Q = 2;
    int64_t p0 = 1, p1 = 0, r0 = 0, r1 = 0;
    {
        int64_t a0 = (P + s) / Q;
        p1 = a0; p0 = 1;  // p_{-1}=1 convention folded in below
        r1 = 1; r0 = 0;
        P = a0 * Q - P;
        Q = (q - P * P) / Q;
    }
    bool found = false;
    for (int it = 0; it < 512 && !found; ++it) {
        QuadInt cand{p1 - r1, r1};
        int64_t n = F.norm(cand);
        if ((n == 1 || n == -1) && r1 > 0) {
            F.eps = cand;
            F.eps_norm = n;
            found = true;
            break;
        }
        int64_t ai = (P + s) / Q;
        int64_t p2 = checked_add(checked_mul(ai, p1), p0);
        int64_t r2 = checked_add(checked_mul(ai, r1), r0);
        p0 = p1; p1 = p2;
        r0 = r1; r1 = r2;
        P = ai * Q - P;
        Q = (q - P * P) / Q;
    }
    if (!found)
        throw std::runtime_error("fundamental unit search did not converge");
    QuadInt c = FieldContext::conj(F.eps);
    F.eps_inv = (F.eps_norm == 1) ? c : FieldContext::neg(c);
    F.log_eps = std::log(F.embed_plus(F.eps));
    return F;
}

inline std::vector<int64_t> supported_discriminants() {
    std::vector<int64_t> out;
    for (int64_t q = 9; q <= 200; ++q) {
        try {
            validate_discriminant(q);
            out.push_back(q);
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

// One ideal per entry: the canonical generator of a nonzero ideal of norm
// at most Nmax, h = 1 for every supported q.
struct IdealRep {
    int64_t norm_abs = 0;
    int64_t a = 0;
    int64_t b = 0;
    double angle = 0.0;
    bool norm_positive = false;
    bool primitive = false;
};

// Visits every ideal of norm <= Nmax exactly once, in raw scan order.
// Canonical angles force both embeddings below sqrt(|N| eps), hence the
// coefficient box; the per-b window is exactly the norm condition.
template <class Visitor>
void for_each_ideal(const FieldContext& F, int64_t Nmax, Visitor&& visit) {
    if (Nmax < 1) return;
    const double L = F.log_eps;
    const double eps_re = F.embed_plus(F.eps);
    const int64_t B = static_cast<int64_t>(
                          2.0 * std::sqrt(eps_re * static_cast<double>(Nmax) /
                                          static_cast<double>(F.q))) + 2;
    for (int64_t b = -B; b <= B; ++b) {
        int64_t qb2 = checked_mul(checked_mul(F.q, b), b);
        int64_t lo2 = qb2 - 4 * Nmax;
        int64_t hi2 = checked_add(qb2, 4 * Nmax);
        int64_t xlo = lo2 <= 0 ? 0 : isqrt64(lo2 - 1) + 1;
        int64_t xhi = isqrt64(hi2);
        for (int sx = 1; sx >= -1; sx -= 2) {
            for (int64_t x = xlo; x <= xhi; ++x) {
                int64_t xx = sx * x;
                if (x == 0 && sx < 0) continue;
                if (((xx - b) % 2 + 2) % 2 != 0) continue;
                int64_t a = (xx - b) / 2;
                QuadInt v{a, b};
                int64_t n = F.norm(v);
                if (n == 0 || std::abs(n) > Nmax) continue;
                if (n > 0 && xx <= 0) continue;
                if (n < 0 && b <= 0) continue;
                double t = F.angle(v);
                if (!(-L < t && t <= L)) continue;
                IdealRep rep;
                rep.norm_abs = std::abs(n);
                rep.a = a;
                rep.b = b;
                rep.angle = t;
                rep.norm_positive = n > 0;
                rep.primitive = gcd64(a, b) == 1;
                visit(rep);
            }
        }
    }
}

inline std::vector<IdealRep> enumerate_ideals(const FieldContext& F,
                                              int64_t Nmax) {
    std::vector<IdealRep> out;
    for_each_ideal(F, Nmax, [&](const IdealRep& r) { out.push_back(r); });
    std::sort(out.begin(), out.end(), [](const IdealRep& x, const IdealRep& y) {
        if (x.norm_abs != y.norm_abs) return x.norm_abs < y.norm_abs;
        return x.angle < y.angle;
    });
    return out;
}

inline std::vector<int64_t> ideal_counts_by_norm(const FieldContext& F,
                                                 int64_t Nmax) {
    std::vector<int64_t> cnt(Nmax + 1, 0);
    for_each_ideal(F, Nmax, [&](const IdealRep& r) { ++cnt[r.norm_abs]; });
    return cnt;
}

} // namespace dmf
