#include "sievelab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sievelab {

PrimeTables::PrimeTables(uint64_t limit) : limit_(limit) {
    if (limit < 2) throw domain_error("prime table limit must be at least 2");
    if (limit > (uint64_t(1) << 32))
        throw domain_error("prime table limit exceeds 2^32");
    spf_.assign(limit + 1, 0);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<uint32_t>(i);
            primes_.push_back(i);
            if (i * i <= limit)
                for (uint64_t j = i * i; j <= limit; j += i)
                    if (spf_[j] == 0) spf_[j] = static_cast<uint32_t>(i);
        }
    }
}

uint64_t PrimeTables::smallest_prime_factor(uint64_t n) const {
    if (n < 2 || n > limit_)
        throw domain_error("smallest_prime_factor: n = " + std::to_string(n) +
                           " outside table range [2, " + std::to_string(limit_) + "]");
    return spf_[n];
}

void PrimeTables::for_primes_in(double lo, double hi,
                                const std::function<void(uint64_t)>& fn) const {
    if (hi > static_cast<double>(limit_))
        throw domain_error("prime range upper bound " + std::to_string(hi) +
                           " exceeds table limit " + std::to_string(limit_));
    auto it = std::upper_bound(primes_.begin(), primes_.end(), lo,
                               [](double v, uint64_t p) { return v < static_cast<double>(p); });
    for (; it != primes_.end() && static_cast<double>(*it) <= hi; ++it) fn(*it);
}

FactoredInteger factorize(uint64_t n, const PrimeTables& tables) {
    if (n == 0) throw domain_error("factorize: n must be positive");
    const uint64_t limit = tables.limit();
    if (limit < (uint64_t(1) << 32) && n > limit * limit)
        throw domain_error("factorize: n = " + std::to_string(n) +
                           " exceeds supported range limit^2");
    FactoredInteger out;
    out.value = n;
    if (n <= limit) {
        while (n > 1) {
            const uint64_t p = tables.smallest_prime_factor(n);
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.factors.emplace_back(p, e);
        }
        return out;
    }
    for (uint64_t p : tables.primes()) {
        if (p * p > n) break;
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.factors.emplace_back(p, e);
        }
    }
    // After removing all primes up to sqrt(n), the cofactor is prime.
    if (n > 1) out.factors.emplace_back(n, 1);
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

namespace {

void divisor_walk(const std::vector<std::pair<uint64_t, uint32_t>>& factors,
                  size_t idx, uint64_t current, uint64_t limit,
                  const std::function<void(uint64_t)>& fn) {
    if (idx == factors.size()) {
        fn(current);
        return;
    }
    const auto [p, e] = factors[idx];
    uint64_t v = current;
    for (uint32_t k = 0; k <= e; ++k) {
        divisor_walk(factors, idx + 1, v, limit, fn);
        if (k == e) break;
        if (limit != 0 && v > limit / p) break;
        v *= p;
    }
}

} // namespace

void for_each_divisor(const FactoredInteger& n, uint64_t limit,
                      const std::function<void(uint64_t)>& fn) {
    divisor_walk(n.factors, 0, 1, limit, fn);
}

double psi_beta(const FactoredInteger& d, double beta) {
    if (beta < 0) throw domain_error("psi_beta: beta must be nonnegative");
    double out = 1.0;
    for (const auto& [p, e] : d.factors) {
        const double lp = std::log(static_cast<double>(p));
        out *= std::exp(beta * e * lp) - std::exp(beta * (e - 1) * lp);
    }
    return out;
}

double mertens_product(const std::function<double(uint64_t)>& h_at_prime,
                       double lower, double upper, const PrimeTables& tables) {
    double log_sum = 0.0;
    tables.for_primes_in(lower, upper, [&](uint64_t p) {
        const double hp = h_at_prime(p);
        if (hp < 0)
            throw domain_error("mertens_product: h(" + std::to_string(p) + ") is negative");
        if (hp >= 1)
            throw domain_error("mertens_product: degenerate factor, h(" +
                               std::to_string(p) + ") >= 1");
        log_sum += std::log1p(-hp);
    });
    return std::exp(log_sum);
}

double log_log(double x, const char* context) {
    if (x < 16)
        throw domain_error(std::string(context) +
                           ": iterated logarithm requires argument >= 16, got " +
                           std::to_string(x));
    return std::log(std::log(x));
}

} // namespace sievelab
