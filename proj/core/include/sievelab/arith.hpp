#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "sievelab/errors.hpp"

namespace sievelab {

/// A positive integer together with its canonical prime-power decomposition.
/// Primes strictly increasing, exponents >= 1; value 1 has an empty list.
struct FactoredInteger {
    uint64_t value = 1;
    std::vector<std::pair<uint64_t, uint32_t>> factors;

    /// Number of prime factors counted with multiplicity.
    uint32_t big_omega() const {
        uint32_t s = 0;
        for (const auto& [p, e] : factors) s += e;
        return s;
    }

    /// Number of distinct prime factors.
    uint32_t small_omega() const { return static_cast<uint32_t>(factors.size()); }

    /// Largest prime factor; 1 for value 1.
    uint64_t p_plus() const { return factors.empty() ? 1 : factors.back().first; }

    /// Smallest prime factor; +infinity for value 1.
    double p_minus() const {
        return factors.empty() ? std::numeric_limits<double>::infinity()
                               : static_cast<double>(factors.front().first);
    }

    /// Exponent of prime p in value (0 when p does not divide it).
    uint32_t valuation(uint64_t p) const {
        for (const auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }

    bool squarefree() const {
        for (const auto& [p, e] : factors)
            if (e > 1) return false;
        return true;
    }

    /// Moebius value: 0 unless squarefree, else (-1)^omega.
    int moebius() const {
        if (!squarefree()) return 0;
        return (factors.size() % 2 == 0) ? 1 : -1;
    }
};

/// Smallest-prime-factor sieve up to a fixed limit plus the prime list.
/// Immutable after construction and safe to share across threads.
class PrimeTables {
public:
    explicit PrimeTables(uint64_t limit);

    uint64_t limit() const { return limit_; }

    /// Least prime divisor of n (2 <= n <= limit).
    uint64_t smallest_prime_factor(uint64_t n) const;

    bool is_prime(uint64_t n) const {
        return n >= 2 && n <= limit_ && smallest_prime_factor(n) == n;
    }

    const std::vector<uint64_t>& primes() const { return primes_; }

    /// Calls fn(p) for each prime p with lo < p <= hi. Requires hi <= limit.
    void for_primes_in(double lo, double hi, const std::function<void(uint64_t)>& fn) const;

private:
    uint64_t limit_;
    std::vector<uint32_t> spf_;
    std::vector<uint64_t> primes_;
};

/// Canonical factorization of n. Uses the sieve for n <= limit and trial
/// division by stored primes up to n <= limit^2. Rejects n = 0 and larger n.
FactoredInteger factorize(uint64_t n, const PrimeTables& tables);

/// Enumerates the divisors of n that do not exceed `limit`, in no particular
/// order. limit = 0 means no cap.
void for_each_divisor(const FactoredInteger& n, uint64_t limit,
                      const std::function<void(uint64_t)>& fn);

/// Multiplicative convolution inverse of the beta-th power: the function with
/// psi(p^m) = p^{beta m} - p^{beta (m-1)}, so that sum over d | m of psi(d)
/// recovers m^beta.
double psi_beta(const FactoredInteger& d, double beta);

/// Product of (1 - h(p)) over primes lower < p <= upper, accumulated in log
/// space. h(p) >= 1 for any prime in range is a degenerate-product error.
double mertens_product(const std::function<double(uint64_t)>& h_at_prime,
                       double lower, double upper, const PrimeTables& tables);

/// Guard for iterated logarithms: rejects x < 16 so that log log x is
/// comfortably defined and positive.
double log_log(double x, const char* context);

} // namespace sievelab
