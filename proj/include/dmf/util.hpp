#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <thread>
#include <functional>
#include <cstdlib>
#include <numeric>
#include <cmath>

namespace dmf {

inline constexpr const char* kVersion = "0.3.0";

// Checked 64-bit arithmetic.  Norm-sized quantities stay well under 2^63 for
// supported inputs (norms <= 1e8); anything larger is a caller bug, so throw.
inline int64_t checked_mul(int64_t a, int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw std::overflow_error("integer overflow in checked_mul");
    return static_cast<int64_t>(p);
}

inline int64_t checked_add(int64_t a, int64_t b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN)
        throw std::overflow_error("integer overflow in checked_add");
    return static_cast<int64_t>(s);
}

inline int64_t gcd64(int64_t a, int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { int64_t t = a % b; a = b; b = t; }
    return a;
}

inline int64_t isqrt64(int64_t n) {
    if (n < 0) throw std::domain_error("isqrt64 of negative");
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(int64_t n) {
    if (n < 0) return false;
    int64_t r = isqrt64(n);
    return r * r == n;
}

inline bool is_prime_u64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<int64_t> primes_up_to(int64_t n) {
    if (n < 1) return {};
    std::vector<bool> is(n + 1, true);
    std::vector<int64_t> out;
    for (int64_t i = 2; i <= n; ++i) {
        if (is[i]) {
            out.push_back(i);
            for (int64_t j = i * i; j <= n; j += i) is[j] = false;
        }
    }
    return out;
}

// Thread count: explicit argument > DMF_THREADS env > hardware.
inline unsigned resolve_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DMF_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static partition of [0, n); results must be written to index-addressed slots
// so the merge order (and therefore every output) is independent of the
// thread count.
inline void parallel_for(size_t n, const std::function<void(size_t)>& body,
                         unsigned threads = 0) {
    unsigned nt = resolve_threads(threads);
    if (nt <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (nt > n) nt = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (size_t i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace dmf
