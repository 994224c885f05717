#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sievelab/multfn.hpp"

namespace sievelab {

/// Parameter pack for the analytic-envelope evaluators. c0, c1, c2 bound the
/// multiplicative weight F; c3 bounds F at higher prime powers; C and C_prime
/// control the submultiplicative growth of G; beta0, varpi, Upsilon, Psi drive
/// the tail estimates. a_max truncates infinite smooth series; nu1 is the
/// (configurable) exponent in the series-ratio envelope.
struct EnvelopeParams {
    double c0 = 1;
    double c1 = 1;
    double c2 = 1;
    double c3 = 0;
    double C = 2;
    double C_prime = 2;
    double beta0 = 1;
    double varpi = 1;
    double Upsilon = 1e3;
    double Psi = 1e2;
    double majorant_epsilon = 0; // 0 means: use c2/2
    double nu1 = 1;
    uint64_t a_max = 10'000'000;

    double effective_epsilon() const { return majorant_epsilon > 0 ? majorant_epsilon : c2 / 2; }
    /// Checks C > 1 and varpi <= min{(c2/2) log Psi, beta0}.
    void validate_tail() const;
};

/// Exact lhs against an explicit envelope; the ratio is the empirically
/// measured constant hiding in the corresponding asymptotic bound.
struct LemmaReport {
    double lhs = 0;
    double rhs_envelope = 0;
    double implied_constant = 0;
    double truncation_error = 0; // certified bound on mass lost to a_max cutoffs
    std::vector<std::pair<std::string, double>> parameters;
};

/// Checks F(p^e) <= min{c0/p, p^{c1 - e c2}} for all prime powers p^e <= x.
/// Throws with a witness on violation.
void check_weight_hypothesis(const ArithmeticFunction& F, const EnvelopeParams& params,
                             double x, const PrimeTables& tables);

/// Sum of F(n) over n in (z, x] whose prime factors all lie below
/// (log x) log log x, against the envelope z^{-c} exp(c' log x / sqrt(log log x))
/// with c = min{c2/2, 1/(1 + floor(2 c1/c2))} and c' = (c + 2(c0 + c))/c.
LemmaReport smooth_tail_sum(const ArithmeticFunction& F, const EnvelopeParams& params,
                            double x, double z, const PrimeTables& tables);

/// Truncated Euler product over p <= T, p coprime to `modulus`, of
/// 1 + sum_{i>=1, j>=0} min{C' p^{(i+j)c2/2}, A^{i+j}} F(p^{i+j})
///     (p^{beta i} - p^{beta(i-1)}) w_p,
/// with w_p = (1-F(p))^{-1} for p > c0 and 1 otherwise, against exp(beta log T).
LemmaReport truncated_euler_product(const ArithmeticFunction& F, const EnvelopeParams& params,
                                    double A, uint64_t modulus, double beta, double T,
                                    const PrimeTables& tables);

/// Checks G(ab) <= G(a) H(b) for coprime pairs with ab <= sample_limit, where
/// H(p^e) = min{C^e, C' p^{eps e}} and eps = effective_epsilon().
ClassReport majorant_check(const ArithmeticFunction& G, const EnvelopeParams& params,
                           uint64_t sample_limit, const PrimeTables& tables);

/// Tail sum_{a > Upsilon, P+(a) < Psi} F(a) G(a) prod_{c0 < p | a} (1-F(p))^{-1}
/// against exp(-varpi log Upsilon / log Psi) times the full Psi-smooth series.
LemmaReport smooth_tail_vs_series(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                  const EnvelopeParams& params, const PrimeTables& tables);

/// Same tail against exp(-varpi log Upsilon / log Psi) times the plain head
/// sum over a <= Psi.
LemmaReport smooth_tail_vs_head(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                const EnvelopeParams& params, const PrimeTables& tables);

/// Smooth series H(V) against H(V^epsilon); the implied constant is
/// lhs * epsilon^{nu1} / rhs. Requires V^{eps c2/2} > 2C and V^eps > c0.
LemmaReport smooth_series_ratio(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                const EnvelopeParams& params, double V, double epsilon,
                                const PrimeTables& tables);

/// Exact sum over squarefree m coprime to `a` with prime factors in
/// (alpha1, x^{alpha2}], weighted by g(m) and the squared complement product,
/// against the two-case envelope. alpha1 is g.params.B.
LemmaReport sieve_weighted_sum(const DensityFunction& g, uint64_t a, double alpha2,
                               double alpha3, double x, const PrimeTables& tables);

/// Sum of F(n) G(n) over n <= x with P-(n) > c0 against
/// exp(sum_{c0 < p <= x} F(p) G(p)). Requires F(p^e) <= c3/p^2 for e >= 2.
LemmaReport restricted_sum_exp_bound(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                     const EnvelopeParams& params, double x,
                                     const PrimeTables& tables);

/// The built-in test weight F(p^e) = min{1/p, p^{1-e}}; satisfies the
/// hypotheses with c0 = c1 = c2 = 1.
ArithmeticFunction standard_weight();

} // namespace sievelab
