#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/families.hpp"

namespace sievelab {

/// Split-scale constants derived from the model: eta1 = (1/alpha) min{xi/20,
/// theta/2, 1/2}, eta2 = 1/2, eta3 = min{lambda1 eta2 / (2(1+lambda1+lambda2)),
/// 1/2}, and the split scale Z = M^{alpha eta1}. beta1 and beta2 are the
/// saving exponents of the two sparse cases: their contributions carry
/// theoretical envelopes M^{1-beta1} and M^{1-beta2}.
struct DecompositionConstants {
    double eta1 = 0;
    double eta2 = 0;
    double eta3 = 0;
    double Z = 0;
    double beta1 = 0;
    double beta2 = 0;
};

/// Lower-bound scale constants: v = min{1, theta min{1/4, xi/(4 theta)} /
/// (1 + 9 kappa + log 2 + 10 log K)}, v0 = min{v/2, theta/2}, z = M^v.
struct LowerBoundConstants {
    double v = 0;
    double v0 = 0;
    double z = 0;
};

std::pair<DecompositionConstants, LowerBoundConstants>
compute_constants(const EquidistModel& model, double M);

/// Factorization c = d * b where d collects the smallest full prime powers
/// with product <= Z and b carries the rest; P+(d) < P-(b) and gcd(d, b) = 1.
struct FlatRoughSplit {
    uint64_t d = 1;
    uint64_t b = 1;
    double p_minus_b = 0; // smallest prime of b; +inf when b = 1
};

FlatRoughSplit split_flat_rough(const FactoredInteger& c, double Z);

enum class CaseLabel : int { I = 0, II = 1, III = 2, IV = 3 };

/// Classifies a split with precedence I -> IV:
///   I   P-(b) >= Z^{eta3}
///   II  d <= Z^{1-eta2}
///   III P-(b) <= (log Z) log log Z
///   IV  otherwise.
/// Requires Z >= 16 so the iterated-log threshold is defined.
CaseLabel classify_case(const FlatRoughSplit& split, double Z,
                        const DecompositionConstants& consts);

/// z-smooth part of c: the product of p^{v_p(c)} over primes p <= z.
uint64_t flat_part(const FactoredInteger& c, double z);

/// Exact weighted sum of f over the family values at parameter T.
double lhs_sum(const WeightedFamily& fam, const ArithmeticFunction& f, double T,
               const PrimeTables& tables);

/// M prod_{B < p <= M}(1 - h(p)) sum_{a <= M} f(a) h(a), all factors exact.
double upper_bound_rhs(const WeightedFamily& fam, const ArithmeticFunction& f, double T,
                       const PrimeTables& tables);

/// Same with the product over every prime p <= M. Throws when h(p) >= 1 for
/// some small prime; that signals the lower bound is vacuous for this h.
double lower_bound_rhs(const WeightedFamily& fam, const ArithmeticFunction& f, double T,
                       const PrimeTables& tables);

struct BoundReport {
    double T = 0;
    double M = 0;
    double total_weight = 0;
    double Z = 0; // effective split scale used for the case decomposition
    double lhs = 0;
    double rhs_upper = 0;
    double ratio_upper = 0;
    std::optional<double> rhs_lower;
    std::optional<double> ratio_lower;
    std::array<double, 4> case_contributions{0, 0, 0, 0};
    std::array<uint64_t, 4> case_counts{0, 0, 0, 0};
};

struct BoundScanOptions {
    /// Explicit split scale; 0 selects max(M^{alpha eta1}, 16). The formula
    /// value M^{alpha eta1} falls below the classifiable floor of 16 for any
    /// desk-scale M, so it is clamped.
    double z_override = 0;
    /// When set, f is first checked against the growth class at this limit.
    std::optional<GrowthParams> growth_params;
    uint64_t growth_check_limit = 10'000;
    /// Positivity proxy controls for the lower bound (min f over m <= limit
    /// with Omega(m) <= L must be positive).
    uint32_t positivity_L = 24;
    uint64_t positivity_limit = 10'000;
};

BoundReport bound_scan_point(const WeightedFamily& fam, const ArithmeticFunction& f,
                             double T, const PrimeTables& tables,
                             const BoundScanOptions& options = {});

/// Theoretical error scale attached to a case contribution: M^{1-xi/3} for
/// the two sieve-driven cases, M^{1-beta1} and M^{1-beta2} for the sparse
/// middle cases. Diagnostic only; the constants in front are nonconstructive.
double case_envelope_scale(CaseLabel label, double M, double xi,
                           const DecompositionConstants& consts);

/// Per-prime account of the second case: for each prime q below Z^{eta3},
/// the exponent f_q = min{least m with q^m > Z^{eta2}, largest n with
/// q^n <= M^theta} and the weight of family values divisible by q^{f_q}.
struct CaseTwoDiagnostic {
    uint64_t q = 0;
    uint32_t f_q = 0;
    double modulus_weight = 0; // C_{q^{f_q}}(T)
};

std::vector<CaseTwoDiagnostic> case_two_diagnostics(const WeightedFamily& fam, double T,
                                                    double Z,
                                                    const DecompositionConstants& consts,
                                                    const PrimeTables& tables);

/// One report per grid point; ratios are the empirical implied constants of
/// the matching upper and lower bounds.
std::vector<BoundReport> bound_scan(const WeightedFamily& fam, const ArithmeticFunction& f,
                                    const std::vector<double>& T_grid,
                                    const PrimeTables& tables,
                                    const BoundScanOptions& options = {});

} // namespace sievelab
