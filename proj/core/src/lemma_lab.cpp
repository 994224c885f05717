#include "sievelab/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>

namespace sievelab {

namespace {

double pow_u64(uint64_t p, double expo) { return std::pow(static_cast<double>(p), expo); }

/// H(p^e) = min{C^e, C' p^{eps e}}: the multiplicative majorant of G.
double majorant_value(const EnvelopeParams& params, uint64_t p, uint32_t e) {
    const double eps = params.effective_epsilon();
    return std::min(std::pow(params.C, e), params.C_prime * pow_u64(p, eps * e));
}

/// Primes strictly below `bound` from the table; errors if the table is short.
std::vector<uint64_t> primes_below(const PrimeTables& tables, double bound, const char* who) {
    if (std::ceil(bound) - 1 > static_cast<double>(tables.limit()))
        throw domain_error(std::string(who) + ": prime table too small (need primes below " +
                           std::to_string(bound) + ")");
    std::vector<uint64_t> out;
    for (uint64_t p : tables.primes()) {
        if (static_cast<double>(p) >= bound) break;
        out.push_back(p);
    }
    return out;
}

struct SmoothTermWeights {
    double F_value = 1;        // F(n)
    double complement = 1;     // prod over c0 < p | n of (1 - F(p))^{-1}
};

using FactorStack = std::vector<std::pair<uint64_t, uint32_t>>;

/// Visits every n <= limit whose prime factors all come from `primes`
/// (ascending), carrying multiplicative data for F, the complement weight and
/// the factorization itself. The limit may exceed the prime-table range.
void for_each_smooth(const std::vector<uint64_t>& primes, uint64_t limit,
                     const ArithmeticFunction& F, double c0,
                     const std::function<void(uint64_t, const SmoothTermWeights&,
                                              const FactorStack&)>& visit) {
    SmoothTermWeights unit;
    FactorStack stack;
    visit(1, unit, stack);
    std::function<void(size_t, uint64_t, SmoothTermWeights)> dfs =
        [&](size_t start, uint64_t value, SmoothTermWeights w) {
            for (size_t i = start; i < primes.size(); ++i) {
                const uint64_t p = primes[i];
                if (p > limit / value) break;
                const double Fp = F.at_prime_power(p, 1);
                if (Fp >= 1 && static_cast<double>(p) > c0)
                    throw domain_error("smooth sum: F(" + std::to_string(p) +
                                       ") >= 1 degenerates the complement weight");
                double comp = w.complement;
                if (static_cast<double>(p) > c0) comp /= (1 - Fp);
                uint64_t v = value;
                uint32_t e = 0;
                while (p <= limit / v) {
                    v *= p;
                    ++e;
                    SmoothTermWeights next{w.F_value * F.at_prime_power(p, e), comp};
                    stack.emplace_back(p, e);
                    visit(v, next, stack);
                    dfs(i + 1, v, next);
                    stack.pop_back();
                }
            }
        };
    dfs(0, 1, unit);
}

double multiplicative_over(const ArithmeticFunction& g, const FactorStack& stack) {
    double out = 1;
    for (const auto& [p, e] : stack) out *= g.at_prime_power(p, e);
    return out;
}

/// Rankin bound on the smooth-series mass above a_max:
///   tail <= a_max^{-delta} prod_p (1 + w_p sum_e F(p^e) g(p^e) p^{delta e}),
/// where g is G itself when multiplicative, else G(1) times the H majorant.
/// Scans a ladder of delta values and keeps the best convergent bound.
double rankin_tail_bound(const std::vector<uint64_t>& primes, const ArithmeticFunction& F,
                         const ArithmeticFunction& G, const EnvelopeParams& params,
                         uint64_t a_max, const PrimeTables& tables) {
    const bool true_g = G.is_multiplicative();
    const double G1 = true_g ? 1.0 : G(1, tables);
    double best = std::numeric_limits<double>::infinity();
    for (int step = 1; step <= 12; ++step) {
        const double delta = params.c2 / 2 * (1.0 - std::pow(2.0, -step));
        bool converged = true;
        double log_prod = 0;
        for (uint64_t p : primes) {
            double series = 0;
            double prev = std::numeric_limits<double>::infinity();
            bool ok = false;
            for (uint32_t e = 1; e <= 300; ++e) {
                const double gpe =
                    true_g ? G.at_prime_power(p, e) : majorant_value(params, p, e);
                const double term = F.at_prime_power(p, e) * gpe * pow_u64(p, delta * e);
                series += term;
                if (term < 1e-14 * (1 + series) && term <= prev) { ok = true; break; }
                prev = term;
            }
            if (!ok) { converged = false; break; }
            const double Fp = F.at_prime_power(p, 1);
            const double wp = static_cast<double>(p) > params.c0 ? 1.0 / (1 - Fp) : 1.0;
            log_prod += std::log1p(wp * series);
        }
        if (converged)
            best = std::min(best, G1 * std::exp(log_prod - delta * std::log(double(a_max))));
    }
    return best;
}

struct SmoothSum {
    double value = 0;
    double tail_bound = 0;
};

/// Full smooth series as a product of local factors 1 + w_p sum_e F(p^e)G(p^e);
/// requires G multiplicative. Returns nullopt when a local series fails the
/// convergence guard.
std::optional<double> exact_series_product(const std::vector<uint64_t>& primes,
                                           const ArithmeticFunction& F,
                                           const ArithmeticFunction& G,
                                           const EnvelopeParams& params) {
    double log_prod = 0;
    for (uint64_t p : primes) {
        double series = 0;
        double prev = std::numeric_limits<double>::infinity();
        bool ok = false;
        for (uint32_t e = 1; e <= 300; ++e) {
            const double term = F.at_prime_power(p, e) * G.at_prime_power(p, e);
            series += term;
            if (term < 1e-15 * (1 + series) && term <= prev) { ok = true; break; }
            prev = term;
        }
        if (!ok || !std::isfinite(series)) return std::nullopt;
        const double Fp = F.at_prime_power(p, 1);
        const double wp = static_cast<double>(p) > params.c0 ? 1.0 / (1 - Fp) : 1.0;
        log_prod += std::log1p(wp * series);
    }
    return std::exp(log_prod);
}

/// Sum of F(a) G(a) prod_{c0<p|a}(1-F(p))^{-1} over `lower` < a <= a_max with
/// P+(a) < psi, plus a certified bound on the omitted mass above a_max. When G
/// is multiplicative the bound is the exact remainder of the factored series;
/// otherwise it falls back to the Rankin majorant.
SmoothSum smooth_weighted_sum(const ArithmeticFunction& F, const ArithmeticFunction& G,
                              const EnvelopeParams& params, double psi, double lower,
                              const PrimeTables& tables) {
    if (!F.is_multiplicative())
        throw domain_error("smooth sum requires a multiplicative weight F");
    const auto primes = primes_below(tables, psi, "smooth sum");
    const bool mult_g = G.is_multiplicative();
    SmoothSum out;
    double total = 0; // over all a <= a_max, regardless of `lower`
    for_each_smooth(primes, params.a_max, F, params.c0,
                    [&](uint64_t n, const SmoothTermWeights& w, const FactorStack& stack) {
                        const double g = mult_g ? multiplicative_over(G, stack) : G(n, tables);
                        const double term = w.F_value * g * w.complement;
                        total += term;
                        if (static_cast<double>(n) > lower) out.value += term;
                    });
    out.tail_bound = std::numeric_limits<double>::infinity();
    if (mult_g) {
        if (const auto full = exact_series_product(primes, F, G, params))
            out.tail_bound = std::max(0.0, *full - total);
    }
    out.tail_bound = std::min(
        out.tail_bound, rankin_tail_bound(primes, F, G, params, params.a_max, tables));
    return out;
}

double scaled(const LemmaReport& r) {
    if (r.rhs_envelope == 0) return r.lhs == 0 ? 0 : std::numeric_limits<double>::infinity();
    return r.lhs / r.rhs_envelope;
}

} // namespace

void EnvelopeParams::validate_tail() const {
    if (!(C > 1)) throw domain_error("envelope parameters require C > 1");
    const double cap = std::min(c2 / 2 * std::log(Psi), beta0);
    if (varpi > cap + 1e-12)
        throw domain_error("envelope parameters require varpi <= min{(c2/2) log Psi, beta0}");
}

void check_weight_hypothesis(const ArithmeticFunction& F, const EnvelopeParams& params,
                             double x, const PrimeTables& tables) {
    if (!F.is_multiplicative())
        throw domain_error("weight hypothesis check requires a multiplicative F");
    if (static_cast<double>(tables.limit()) < x)
        throw domain_error("weight hypothesis check needs the prime table to reach x");
    for (uint64_t p : tables.primes()) {
        if (static_cast<double>(p) > x) break;
        double pe = static_cast<double>(p);
        for (uint32_t e = 1; pe <= x; ++e, pe *= static_cast<double>(p)) {
            const double bound =
                std::min(params.c0 / static_cast<double>(p), pow_u64(p, params.c1 - e * params.c2));
            if (F.at_prime_power(p, e) > bound * (1 + 1e-12))
                throw domain_error("weight hypothesis fails at p=" + std::to_string(p) +
                                   ", e=" + std::to_string(e));
        }
    }
}

ArithmeticFunction standard_weight() {
    return ArithmeticFunction::multiplicative("standard_weight", [](uint64_t p, uint32_t e) {
        return std::min(1.0 / static_cast<double>(p), pow_u64(p, 1.0 - double(e)));
    });
}

LemmaReport smooth_tail_sum(const ArithmeticFunction& F, const EnvelopeParams& params,
                            double x, double z, const PrimeTables& tables) {
    const double llx = log_log(x, "smooth_tail_sum");
    log_log(z, "smooth_tail_sum");
    check_weight_hypothesis(F, params, x, tables);

    const double smooth_cap = std::log(x) * llx;
    // Closed bound p <= (log x) log log x.
    auto primes = primes_below(tables, smooth_cap + 1, "smooth_tail_sum");
    while (!primes.empty() && static_cast<double>(primes.back()) > smooth_cap)
        primes.pop_back();

    LemmaReport report;
    if (z < x) {
        // No complement weight here: pass c0 = +inf so none accrues.
        for_each_smooth(primes, static_cast<uint64_t>(x), F,
                        std::numeric_limits<double>::infinity(),
                        [&](uint64_t n, const SmoothTermWeights& w, const FactorStack&) {
                            if (static_cast<double>(n) > z) report.lhs += w.F_value;
                        });
    }
    const double c = std::min(params.c2 / 2, 1.0 / (1 + std::floor(2 * params.c1 / params.c2)));
    const double c_prime = (c + 2 * (params.c0 + c)) / c;
    report.rhs_envelope = std::pow(z, -c) * std::exp(c_prime * std::log(x) / std::sqrt(llx));
    report.implied_constant = scaled(report);
    report.parameters = {{"x", x}, {"z", z}, {"c", c}, {"c_prime", c_prime}};
    return report;
}

LemmaReport truncated_euler_product(const ArithmeticFunction& F, const EnvelopeParams& params,
                                    double A, uint64_t modulus, double beta, double T,
                                    const PrimeTables& tables) {
    if (A <= 1) throw domain_error("truncated_euler_product: A must exceed 1");
    if (modulus == 0) throw domain_error("truncated_euler_product: modulus must be positive");
    if (!(std::log(T) > 4 * params.beta0 / params.c2))
        throw domain_error("truncated_euler_product: violated log T > 4 beta0 / c2");
    if (!(beta > 0 && beta <= std::min(params.c2 / 2, params.beta0 / std::log(T)) * (1 + 1e-12)))
        throw domain_error("truncated_euler_product: violated beta <= min{c2/2, beta0/log T}");

    const auto primes = primes_below(tables, T + 1, "truncated_euler_product");
    double log_prod = 0;
    for (uint64_t p : primes) {
        if (static_cast<double>(p) > T || modulus % p == 0) continue;
        const double Fp = F.at_prime_power(p, 1);
        if (Fp >= 1 && static_cast<double>(p) > params.c0)
            throw domain_error("truncated_euler_product: F(" + std::to_string(p) + ") >= 1");
        const double wp = static_cast<double>(p) > params.c0 ? 1.0 / (1 - Fp) : 1.0;
        // For fixed k = i + j the inner sum over i telescopes to p^{beta k} - 1.
        double series = 0;
        double prev = std::numeric_limits<double>::infinity();
        bool done = false;
        for (uint32_t k = 1; k <= 500; ++k) {
            const double weight = std::min(params.C_prime * pow_u64(p, k * params.c2 / 2),
                                           std::pow(A, k));
            const double term =
                weight * F.at_prime_power(p, k) * (pow_u64(p, beta * k) - 1) * wp;
            series += term;
            if (!std::isfinite(series) || series > 1e100)
                throw domain_error("truncated_euler_product: divergent local factor at p=" +
                                   std::to_string(p));
            if (term < 1e-12 * (1 + series) && term <= prev && k >= 3) { done = true; break; }
            prev = term;
        }
        if (!done)
            throw domain_error("truncated_euler_product: local factor at p=" +
                               std::to_string(p) + " did not converge");
        log_prod += std::log1p(series);
    }

    LemmaReport report;
    report.lhs = std::exp(log_prod);
    report.rhs_envelope = std::exp(beta * std::log(T));
    report.implied_constant = scaled(report);
    report.parameters = {{"T", T}, {"beta", beta}, {"A", A},
                         {"modulus", static_cast<double>(modulus)}};
    return report;
}

ClassReport majorant_check(const ArithmeticFunction& G, const EnvelopeParams& params,
                           uint64_t sample_limit, const PrimeTables& tables) {
    if (sample_limit < 2) throw domain_error("majorant_check: sample_limit must be >= 2");
    auto H = ArithmeticFunction::multiplicative(
        "majorant", [params](uint64_t p, uint32_t e) { return majorant_value(params, p, e); });
    const std::vector<double> g_values = tabulate(G, sample_limit, tables);
    const std::vector<double> h_values = tabulate(H, sample_limit, tables);

    ConditionResult cond{"majorant_domination"};
    for (uint64_t a = 1; a <= sample_limit; ++a) {
        for (uint64_t b = 1; a * b <= sample_limit; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const double rhs = g_values[a] * h_values[b];
            const double lhs = g_values[a * b];
            const double slack =
                rhs > 0 ? lhs / rhs : (lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0);
            if (slack > cond.worst_slack) {
                cond.worst_slack = slack;
                cond.witness_a = a;
                cond.witness_b = b;
            }
        }
    }
    cond.pass = cond.worst_slack <= 1 + 1e-12;
    ClassReport report;
    report.checked = "coprime pairs with ab <= " + std::to_string(sample_limit);
    report.conditions.push_back(cond);
    return report;
}

LemmaReport smooth_tail_vs_series(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                  const EnvelopeParams& params, const PrimeTables& tables) {
    params.validate_tail();
    log_log(params.Upsilon, "smooth_tail_vs_series");
    log_log(params.Psi, "smooth_tail_vs_series");

    const SmoothSum tail = smooth_weighted_sum(F, G, params, params.Psi, params.Upsilon, tables);
    const SmoothSum series = smooth_weighted_sum(F, G, params, params.Psi, 0, tables);
    const double damping = std::exp(-params.varpi * std::log(params.Upsilon) / std::log(params.Psi));

    LemmaReport report;
    report.lhs = tail.value;
    report.rhs_envelope = damping * series.value;
    report.truncation_error = tail.tail_bound + damping * series.tail_bound;
    report.implied_constant = scaled(report);
    report.parameters = {{"Upsilon", params.Upsilon}, {"Psi", params.Psi},
                         {"varpi", params.varpi}, {"a_max", double(params.a_max)}};
    return report;
}

LemmaReport smooth_tail_vs_head(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                const EnvelopeParams& params, const PrimeTables& tables) {
    params.validate_tail();
    log_log(params.Upsilon, "smooth_tail_vs_head");
    log_log(params.Psi, "smooth_tail_vs_head");

    const SmoothSum tail = smooth_weighted_sum(F, G, params, params.Psi, params.Upsilon, tables);

    // Head sum over all a <= Psi, no smoothness restriction.
    double head = 0;
    const uint64_t psi_floor = static_cast<uint64_t>(params.Psi);
    for (uint64_t a = 1; a <= psi_floor; ++a) {
        const FactoredInteger fa = factorize(a, tables);
        double complement = 1;
        for (const auto& [p, e] : fa.factors) {
            if (static_cast<double>(p) <= params.c0) continue;
            const double Fp = F.at_prime_power(p, 1);
            if (Fp >= 1)
                throw domain_error("smooth_tail_vs_head: F(" + std::to_string(p) + ") >= 1");
            complement /= (1 - Fp);
        }
        head += F(fa) * G(fa) * complement;
    }
    const double damping = std::exp(-params.varpi * std::log(params.Upsilon) / std::log(params.Psi));

    LemmaReport report;
    report.lhs = tail.value;
    report.rhs_envelope = damping * head;
    report.truncation_error = tail.tail_bound;
    report.implied_constant = scaled(report);
    report.parameters = {{"Upsilon", params.Upsilon}, {"Psi", params.Psi},
                         {"varpi", params.varpi}, {"a_max", double(params.a_max)}};
    return report;
}

LemmaReport smooth_series_ratio(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                const EnvelopeParams& params, double V, double epsilon,
                                const PrimeTables& tables) {
    if (!(epsilon > 0 && epsilon <= 1))
        throw domain_error("smooth_series_ratio: epsilon must lie in (0, 1]");
    if (!(std::pow(V, epsilon * params.c2 / 2) > 2 * params.C))
        throw domain_error("smooth_series_ratio: violated V^{eps c2/2} > 2C");
    if (!(std::pow(V, epsilon) > params.c0))
        throw domain_error("smooth_series_ratio: violated V^eps > c0");

    const SmoothSum num = smooth_weighted_sum(F, G, params, V, 0, tables);
    const SmoothSum den = smooth_weighted_sum(F, G, params, std::pow(V, epsilon), 0, tables);

    LemmaReport report;
    report.lhs = num.value;
    report.rhs_envelope = den.value;
    report.truncation_error = num.tail_bound + den.tail_bound;
    report.implied_constant = report.rhs_envelope > 0
                                  ? report.lhs * std::pow(epsilon, params.nu1) / report.rhs_envelope
                                  : 0;
    report.parameters = {{"V", V}, {"epsilon", epsilon}, {"nu1", params.nu1},
                         {"a_max", double(params.a_max)}};
    return report;
}

LemmaReport sieve_weighted_sum(const DensityFunction& g, uint64_t a, double alpha2,
                               double alpha3, double x, const PrimeTables& tables) {
    if (a == 0) throw domain_error("sieve_weighted_sum: a must be positive");
    if (!(alpha2 > 0 && alpha3 > 0))
        throw domain_error("sieve_weighted_sum: alpha2 and alpha3 must be positive");
    log_log(x, "sieve_weighted_sum");
    const double alpha1 = g.params.B;
    const double hi = std::pow(x, std::max(alpha2, alpha3));
    const double lo_exp = std::pow(x, std::min(alpha2, alpha3));
    const double cap2 = std::pow(x, alpha2);
    const double cap3 = std::pow(x, alpha3);

    double log_sq = 0, log_mid = 0, log_adj = 0, log_rhs_base = 0, log_cfac = 0;
    tables.for_primes_in(alpha1, hi, [&](uint64_t p) {
        if (a % p == 0) return;
        const double gp = g.at_prime(p);
        if (gp > alpha1 / static_cast<double>(p) + 1e-12)
            throw domain_error("sieve_weighted_sum: g(" + std::to_string(p) +
                               ") exceeds alpha1/p");
        const double pd = static_cast<double>(p);
        if (pd <= cap3) {
            if (gp >= 1)
                throw domain_error("sieve_weighted_sum: g(" + std::to_string(p) +
                                   ") >= 1 inside a squared product");
            log_sq += 2 * std::log1p(-gp);
        }
        if (pd <= cap2) {
            if (pd > cap3) {
                log_mid += std::log1p(gp);
            } else {
                log_adj += std::log1p(gp / ((1 - gp) * (1 - gp)));
            }
        }
        if (pd <= lo_exp) log_rhs_base += std::log1p(-gp);
        if (alpha2 <= alpha3) {
            if (pd > cap2 && pd <= cap3) log_cfac += 2 * std::log1p(-gp);
        } else {
            if (pd > cap3 && pd <= cap2) log_cfac -= std::log1p(-gp);
        }
    });

    LemmaReport report;
    report.lhs = std::exp(log_sq + log_mid + log_adj);
    report.rhs_envelope = std::exp(log_cfac + log_rhs_base);
    report.implied_constant = scaled(report);
    report.parameters = {{"x", x}, {"alpha2", alpha2}, {"alpha3", alpha3},
                         {"a", static_cast<double>(a)}};
    return report;
}

LemmaReport restricted_sum_exp_bound(const ArithmeticFunction& F, const ArithmeticFunction& G,
                                     const EnvelopeParams& params, double x,
                                     const PrimeTables& tables) {
    check_weight_hypothesis(F, params, x, tables);
    // Additional decay at higher prime powers: F(p^e) <= c3/p^2 for e >= 2.
    for (uint64_t p : tables.primes()) {
        const double p2 = static_cast<double>(p) * static_cast<double>(p);
        if (p2 > x) break;
        double pe = p2;
        for (uint32_t e = 2; pe <= x; ++e, pe *= static_cast<double>(p)) {
            if (F.at_prime_power(p, e) > params.c3 / p2 * (1 + 1e-12))
                throw domain_error("restricted_sum_exp_bound: F(p^e) <= c3/p^2 fails at p=" +
                                   std::to_string(p) + ", e=" + std::to_string(e));
        }
    }

    LemmaReport report;
    const uint64_t xi = static_cast<uint64_t>(x);
    for (uint64_t n = 1; n <= xi; ++n) {
        const FactoredInteger fn = factorize(n, tables);
        if (fn.p_minus() <= params.c0) continue;
        report.lhs += F(fn) * G(fn);
    }
    double exponent = 0;
    tables.for_primes_in(params.c0, x, [&](uint64_t p) {
        const FactoredInteger fp{p, {{p, 1}}};
        exponent += F.at_prime_power(p, 1) * G(fp);
    });
    report.rhs_envelope = std::exp(exponent);
    report.implied_constant = scaled(report);
    report.parameters = {{"x", x}, {"c0", params.c0}, {"c3", params.c3}};
    return report;
}

} // namespace sievelab
