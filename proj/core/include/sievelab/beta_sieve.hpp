#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sievelab/families.hpp"

namespace sievelab {

enum class SieveSide { Upper, Lower };

/// Truncated combinatorial sieve weights lambda_m of dimension kappa with
/// support cutoff y and sifting limit z. Nonzero weights live on squarefree
/// products of primes below z; by construction
///   lambda_1 = 1, |lambda_m| <= 1, lambda_m = 0 for m >= y,
/// and for every n the divisor sums sandwich the indicator of
/// gcd(n, P(z)) = 1 from the chosen side.
struct SieveWeights {
    double kappa = 1;
    double y = 0;
    double z = 0;
    double sigma = 0; // log y / log z
    int beta = 0;     // truncation parameter
    SieveSide side = SieveSide::Upper;
    std::vector<std::pair<uint64_t, double>> entries; // sorted by m, nonzero only

    double lambda(uint64_t m) const;

    /// Sum of lambda_m over divisors m of n (only squarefree z-smooth
    /// divisors can contribute).
    double divisor_sum(const FactoredInteger& n) const;
};

/// Builds the weights: lambda_m = mu(m) on chains m = p_1 ... p_r with
/// z > p_1 > ... > p_r where prefix * p_l^{beta+1} < y holds at every odd
/// (upper) or even (lower) level l, and 0 elsewhere. beta defaults to
/// 2*ceil(kappa) + 1; pass beta_param > 0 to override.
SieveWeights build_weights(double kappa, double y, double z, SieveSide side,
                           const PrimeTables& tables, int beta_param = 0);

struct AccuracyResult {
    double sum = 0;        // sum over m of lambda_m f(m)
    double reference = 0;  // prod_{p < z} (1 - f(p))
    double relative_error = 0;
};

/// Compares the weighted density sum against the full sifting product.
/// Requires 0 <= f(p) < 1 on the primes below z.
AccuracyResult main_term_accuracy(const SieveWeights& weights,
                                  const std::function<double(uint64_t)>& f_at_prime,
                                  const PrimeTables& tables);

struct SiftedSumResult {
    double bound = 0;       // Gamma^kappa M h(b) prod_{B<p<=M, p∤b}(1-h(p)) + M^{1-xi/2}
    double exact = 0;       // enumerated weighted count
    double gamma = 0;       // max{1/xi4, 2/theta, 1/xi}
    bool log_scale_ok = false; // whether log M > 4 K Gamma held
};

/// Weighted count of family elements with b | c_a and c_a free of primes
/// p <= M^{xi4}, p∤b, next to its theoretical envelope. The exponent xi3 of
/// the cap b <= M^{xi3} is pinned at theta/2. The scale condition
/// log M > 4 K Gamma is reported, not enforced; at desk scale it rarely holds.
SiftedSumResult sifted_sum_upper(const WeightedFamily& fam, uint64_t b, double T,
                                 double xi4, const PrimeTables& tables);

} // namespace sievelab
