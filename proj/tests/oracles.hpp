// Independent reference implementations used only by tests. Everything here
// works by trial division, direct enumeration or inclusion-exclusion, and
// deliberately shares no code with the library paths it checks.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracles {

inline std::vector<uint64_t> trial_primes(uint64_t limit) {
    std::vector<uint64_t> out;
    for (uint64_t n = 2; n <= limit; ++n) {
        bool prime = true;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) out.push_back(n);
    }
    return out;
}

inline std::map<uint64_t, uint32_t> trial_factor(uint64_t n) {
    std::map<uint64_t, uint32_t> out;
    for (uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) { out[d] += 1; n /= d; }
    if (n > 1) out[n] += 1;
    return out;
}

inline std::vector<uint64_t> divisors_of(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
    return out;
}

inline uint64_t largest_prime_factor(uint64_t n) {
    if (n == 1) return 1;
    uint64_t best = 1;
    for (const auto& [p, e] : trial_factor(n)) best = p;
    return best;
}

inline uint64_t smallest_prime_factor(uint64_t n) {
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

inline uint32_t big_omega(uint64_t n) {
    uint32_t s = 0;
    for (const auto& [p, e] : trial_factor(n)) s += e;
    return s;
}

/// #{n <= N : gcd(n, p1...pk) = 1} by inclusion-exclusion over subsets.
inline uint64_t coprime_count(uint64_t N, const std::vector<uint64_t>& primes) {
    const size_t k = primes.size();
    int64_t total = 0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
        uint64_t prod = 1;
        int sign = 1;
        bool overflow = false;
        for (size_t i = 0; i < k; ++i)
            if (mask & (uint64_t(1) << i)) {
                if (prod > N / primes[i]) { overflow = true; break; }
                prod *= primes[i];
                sign = -sign;
            }
        if (overflow) continue;
        total += sign * static_cast<int64_t>(N / prod);
    }
    return static_cast<uint64_t>(total);
}

/// sum_{n <= T} tau(n) via the hyperbola identity 2 sum_{d <= sqrt(T)} [T/d] - [sqrt(T)]^2.
inline uint64_t hyperbola_tau_sum(uint64_t T) {
    uint64_t r = 0;
    while ((r + 1) * (r + 1) <= T) ++r;
    uint64_t s = 0;
    for (uint64_t d = 1; d <= r; ++d) s += T / d;
    return 2 * s - r * r;
}

inline double harmonic(uint64_t T) {
    double s = 0;
    for (uint64_t a = T; a >= 1; --a) s += 1.0 / static_cast<double>(a);
    return s;
}

/// prod over trial primes lo < p <= hi of (1 - h(p)).
inline double direct_prime_product(const std::function<double(uint64_t)>& h, double lo,
                                   double hi) {
    double prod = 1;
    for (uint64_t p : trial_primes(static_cast<uint64_t>(hi)))
        if (static_cast<double>(p) > lo && static_cast<double>(p) <= hi) prod *= 1 - h(p);
    return prod;
}

/// Exhaustive subset-product sum for the squarefree weighted-product lemma:
/// sum over squarefree m coprime to a with primes in (alpha1, cap2] of
/// g(m) prod_{alpha1 < p <= cap3, p coprime am} (1 - g(p))^2.
inline double subset_product_sum(const std::function<double(uint64_t)>& g_at_prime,
                                 uint64_t a, double alpha1, double cap2, double cap3) {
    std::vector<uint64_t> m_primes, sq_primes;
    for (uint64_t p : trial_primes(static_cast<uint64_t>(std::max(cap2, cap3)))) {
        if (a % p == 0 || static_cast<double>(p) <= alpha1) continue;
        if (static_cast<double>(p) <= cap2) m_primes.push_back(p);
        if (static_cast<double>(p) <= cap3) sq_primes.push_back(p);
    }
    double base = 1;
    for (uint64_t p : sq_primes) base *= (1 - g_at_prime(p)) * (1 - g_at_prime(p));

    double total = 0;
    // DFS over subsets; `correction` divides out the squared factors of primes in m.
    std::function<void(size_t, double, double)> rec = [&](size_t i, double gm,
                                                          double correction) {
        if (i == m_primes.size()) {
            total += gm * base * correction;
            return;
        }
        rec(i + 1, gm, correction);
        const uint64_t p = m_primes[i];
        const double gp = g_at_prime(p);
        double corr = correction;
        if (static_cast<double>(p) <= cap3) corr /= (1 - gp) * (1 - gp);
        rec(i + 1, gm * gp, corr);
    };
    rec(0, 1.0, 1.0);
    return total;
}

} // namespace oracles
