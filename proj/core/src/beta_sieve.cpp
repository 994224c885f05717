#include "sievelab/beta_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sievelab {

double SieveWeights::lambda(uint64_t m) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), m,
                               [](const auto& e, uint64_t v) { return e.first < v; });
    return (it != entries.end() && it->first == m) ? it->second : 0.0;
}

double SieveWeights::divisor_sum(const FactoredInteger& n) const {
    // Only the squarefree part built from primes below z matters.
    std::vector<uint64_t> ps;
    for (const auto& [p, e] : n.factors)
        if (static_cast<double>(p) < z) ps.push_back(p);
    double total = 0;
    const size_t k = ps.size();
    if (k >= 63) throw domain_error("divisor_sum: too many sifting primes");
    for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
        uint64_t m = 1;
        for (size_t i = 0; i < k; ++i)
            if (mask & (uint64_t(1) << i)) m *= ps[i];
        total += lambda(m);
    }
    return total;
}

SieveWeights build_weights(double kappa, double y, double z, SieveSide side,
                           const PrimeTables& tables, int beta_param) {
    if (kappa <= 0) throw domain_error("build_weights: kappa must be positive");
    if (y <= 1 || z <= 1) throw domain_error("build_weights: y and z must exceed 1");
    if (y < z) throw domain_error("build_weights: requires y >= z (sigma >= 1)");
    if (y > 1e12) throw domain_error("build_weights: y above 10^12 is unsupported");
    if (std::ceil(z) - 1 > static_cast<double>(tables.limit()))
        throw domain_error("build_weights: prime table too small for z");

    SieveWeights w;
    w.kappa = kappa;
    w.y = y;
    w.z = z;
    w.sigma = std::log(y) / std::log(z);
    w.beta = beta_param > 0 ? beta_param : 2 * static_cast<int>(std::ceil(kappa)) + 1;
    w.side = side;

    // Sifting primes below z, descending.
    std::vector<uint64_t> primes;
    for (uint64_t p : tables.primes()) {
        if (static_cast<double>(p) >= z) break;
        primes.push_back(p);
    }
    std::reverse(primes.begin(), primes.end());

    w.entries.emplace_back(1, 1.0);

    const int parity = side == SieveSide::Upper ? 1 : 0; // level l mod 2 that is checked
    const unsigned beta_exp = static_cast<unsigned>(w.beta) + 1;

    // DFS over descending prime chains. The level-l condition
    // prefix * p_l^{beta+1} < y only involves the first l primes, so a failed
    // check prunes the whole subtree.
    std::vector<std::pair<uint64_t, double>>& out = w.entries;
    std::function<void(size_t, uint64_t, int)> extend = [&](size_t start, uint64_t prefix,
                                                            int level) {
        for (size_t i = start; i < primes.size(); ++i) {
            const uint64_t p = primes[i];
            const int l = level + 1;
            if (l % 2 == parity) {
                __int128 guard = prefix;
                bool ok = true;
                for (unsigned k = 0; k < beta_exp && ok; ++k) {
                    guard *= p;
                    if (static_cast<double>(guard) >= y) ok = false;
                }
                if (!ok) continue;
            }
            const __int128 m = static_cast<__int128>(prefix) * p;
            if (static_cast<double>(m) >= y) continue;
            const uint64_t m64 = static_cast<uint64_t>(m);
            out.emplace_back(m64, l % 2 == 0 ? 1.0 : -1.0);
            extend(i + 1, m64, l);
        }
    };
    extend(0, 1, 0);

    std::sort(out.begin(), out.end());
    return w;
}

AccuracyResult main_term_accuracy(const SieveWeights& weights,
                                  const std::function<double(uint64_t)>& f_at_prime,
                                  const PrimeTables& tables) {
    if (std::ceil(weights.z) - 1 > static_cast<double>(tables.limit()))
        throw domain_error("main_term_accuracy: prime table too small for z");
    AccuracyResult result;
    double log_ref = 0;
    std::vector<uint64_t> primes;
    for (uint64_t p : tables.primes()) {
        if (static_cast<double>(p) >= weights.z) break;
        const double fp = f_at_prime(p);
        if (fp < 0 || fp >= 1)
            throw domain_error("main_term_accuracy: f(" + std::to_string(p) +
                               ") outside [0, 1)");
        primes.push_back(p);
        log_ref += std::log1p(-fp);
    }
    result.reference = std::exp(log_ref);

    for (const auto& [m, lam] : weights.entries) {
        double fm = 1.0;
        uint64_t rest = m;
        for (uint64_t p : primes) {
            if (rest == 1) break;
            if (rest % p == 0) {
                fm *= f_at_prime(p);
                rest /= p;
            }
        }
        result.sum += lam * fm;
    }
    result.relative_error = std::abs(result.sum / result.reference - 1.0);
    return result;
}

SiftedSumResult sifted_sum_upper(const WeightedFamily& fam, uint64_t b, double T,
                                 double xi4, const PrimeTables& tables) {
    if (b == 0) throw domain_error("sifted_sum_upper: b must be positive");
    if (xi4 <= 0) throw domain_error("sifted_sum_upper: xi4 must be positive");
    const EquidistModel& model = fam.model();
    const auto support = fam.support(T);
    const double M = fam.resolve_M(T, support);
    const DensityFunction h = model.density_at(T);

    const double xi3 = model.theta / 2;
    if (static_cast<double>(b) > std::pow(M, xi3))
        throw domain_error("sifted_sum_upper: violated b <= M^(theta/2)");

    SiftedSumResult result;
    result.gamma = std::max({1.0 / xi4, 1.0 / (model.theta - xi3), 1.0 / model.xi});
    result.log_scale_ok = std::log(M) > 4 * h.params.K * result.gamma;

    const double sift_limit = std::pow(M, xi4);
    std::vector<uint64_t> sift_primes;
    tables.for_primes_in(1, sift_limit, [&](uint64_t p) {
        if (b % p != 0) sift_primes.push_back(p);
    });

    for (const auto& e : support) {
        if (e.weight == 0 || e.value % b != 0) continue;
        bool coprime = true;
        for (uint64_t p : sift_primes)
            if (e.value % p == 0) { coprime = false; break; }
        if (coprime) result.exact += e.weight;
    }

    const double B = h.params.B;
    double log_prod = 0;
    tables.for_primes_in(B, M, [&](uint64_t p) {
        if (b % p == 0) return;
        const double hp = h.at_prime(p);
        if (hp >= 1)
            throw domain_error("sifted_sum_upper: h(" + std::to_string(p) + ") >= 1");
        log_prod += std::log1p(-hp);
    });
    const double hb = h(b, tables);
    result.bound = std::pow(result.gamma, h.params.kappa) * M * hb * std::exp(log_prod) +
                   std::pow(M, 1 - model.xi / 2);
    return result;
}

} // namespace sievelab
