#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "dmf/quadfield.hpp"

namespace dmf {

// Spectral parameter of the k-th form: the angle character e^{i pi k t / L}
// pairs with eigenvalue 1/4 + T_k^2, T_k = pi k / L.
inline double spectral_parameter(const FieldContext& F, int64_t k) {
    return std::numbers::pi * static_cast<double>(k) / F.log_eps;
}

struct CoeffTable {
    int64_t q = 0;
    int64_t k = 0;
    double T = 0.0;
    std::vector<double> a;  // a[n], n = 0..N; a[0] stays 0

    int64_t nmax() const { return static_cast<int64_t>(a.size()) - 1; }
    double operator()(int64_t n) const { return a[n]; }
};

// One enumeration pass shared by all requested k: each ideal contributes
// cos(pi k t / L) to a_k(|N|).  Conjugate ideals carry opposite angles, so
// the full character sum is real and the cosine sum realizes it.
inline std::vector<CoeffTable> make_coeff_tables(const FieldContext& F,
                                                 std::span<const int64_t> ks,
                                                 int64_t N) {
    if (N < 1) throw std::invalid_argument("coefficient range must be positive");
    std::vector<CoeffTable> out(ks.size());
    std::vector<double> freq(ks.size());
    for (size_t i = 0; i < ks.size(); ++i) {
        out[i].q = F.q;
        out[i].k = ks[i];
        out[i].T = spectral_parameter(F, ks[i]);
        out[i].a.assign(N + 1, 0.0);
        freq[i] = std::numbers::pi * static_cast<double>(ks[i]) / F.log_eps;
    }
    for_each_ideal(F, N, [&](const IdealRep& r) {
        for (size_t i = 0; i < ks.size(); ++i)
            out[i].a[r.norm_abs] += std::cos(freq[i] * r.angle);
    });
    return out;
}

inline CoeffTable make_coeff_table(const FieldContext& F, int64_t k,
                                   int64_t N) {
    int64_t ks[1] = {k};
    return make_coeff_tables(F, ks, N)[0];
}

} // namespace dmf
