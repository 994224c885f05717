#include "sievelab/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace sievelab {

namespace {

/// Compensated accumulator; keeps partition identities tight at 1e6+ terms.
struct KahanSum {
    double sum = 0;
    double carry = 0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double fh_sum(const ArithmeticFunction& f, const DensityFunction& h, double M,
              const PrimeTables& tables) {
    KahanSum acc;
    const uint64_t cap = static_cast<uint64_t>(M);
    for (uint64_t a = 1; a <= cap; ++a) {
        const FactoredInteger fa = factorize(a, tables);
        acc.add(f(fa) * h(fa));
    }
    return acc.sum;
}

} // namespace

std::pair<DecompositionConstants, LowerBoundConstants>
compute_constants(const EquidistModel& model, double M) {
    model.validate();
    const DensityParams& dp = model.h.params;

    DecompositionConstants dc;
    dc.eta1 = (1.0 / model.alpha) * std::min({model.xi / 20, model.theta / 2, 0.5});
    dc.eta2 = 0.5;
    dc.eta3 = std::min(dp.lambda1 * dc.eta2 / (2 * (1 + dp.lambda1 + dp.lambda2)), 0.5);
    dc.Z = std::pow(M, model.alpha * dc.eta1);
    const double ae1 = model.alpha * dc.eta1;
    dc.beta1 = std::min(ae1 * (dp.lambda1 * dc.eta2 - dc.eta3 * (1 + dp.lambda1 + dp.lambda2)),
                        model.xi - ae1 * dc.eta3);
    const double smooth_c =
        std::min(dp.lambda1 / 2, 1.0 / (1 + std::floor(2 * dp.lambda2 / dp.lambda1)));
    dc.beta2 = std::min(model.xi - ae1, ae1 * (1 - dc.eta2) * smooth_c / 2);

    LowerBoundConstants lc;
    const double denom = 1 + 9 * dp.kappa + std::log(2.0) + 10 * std::log(dp.K);
    if (denom <= 0)
        throw domain_error("compute_constants: lower-bound scale undefined (denominator "
                           "1 + 9 kappa + log 2 + 10 log K is nonpositive)");
    lc.v = std::min(1.0, model.theta * std::min(0.25, model.xi / (4 * model.theta)) / denom);
    lc.v0 = std::min(lc.v / 2, model.theta / 2);
    lc.z = std::pow(M, lc.v);
    return {dc, lc};
}

FlatRoughSplit split_flat_rough(const FactoredInteger& c, double Z) {
    if (Z < 1) throw domain_error("split_flat_rough: Z must be at least 1");
    FlatRoughSplit split;
    split.p_minus_b = std::numeric_limits<double>::infinity();
    uint64_t d = 1;
    size_t i = 0;
    for (; i < c.factors.size(); ++i) {
        const auto [p, e] = c.factors[i];
        uint64_t pe = 1;
        for (uint32_t k = 0; k < e; ++k) pe *= p;
        if (static_cast<double>(d) * static_cast<double>(pe) <= Z)
            d *= pe;
        else
            break;
    }
    split.d = d;
    split.b = c.value / d;
    if (i < c.factors.size()) split.p_minus_b = static_cast<double>(c.factors[i].first);
    return split;
}

CaseLabel classify_case(const FlatRoughSplit& split, double Z,
                        const DecompositionConstants& consts) {
    if (Z < 16)
        throw domain_error("classify_case: split scale Z must be at least 16 "
                           "(iterated-log threshold)");
    if (split.p_minus_b >= std::pow(Z, consts.eta3)) return CaseLabel::I;
    if (static_cast<double>(split.d) <= std::pow(Z, 1 - consts.eta2)) return CaseLabel::II;
    if (split.p_minus_b <= std::log(Z) * std::log(std::log(Z))) return CaseLabel::III;
    return CaseLabel::IV;
}

uint64_t flat_part(const FactoredInteger& c, double z) {
    uint64_t out = 1;
    for (const auto& [p, e] : c.factors) {
        if (static_cast<double>(p) > z) break;
        for (uint32_t k = 0; k < e; ++k) out *= p;
    }
    return out;
}

double lhs_sum(const WeightedFamily& fam, const ArithmeticFunction& f, double T,
               const PrimeTables& tables) {
    KahanSum acc;
    for (const auto& e : fam.support(T)) {
        if (e.weight == 0) continue;
        acc.add(e.weight * f(e.value, tables));
    }
    return acc.sum;
}

double upper_bound_rhs(const WeightedFamily& fam, const ArithmeticFunction& f, double T,
                       const PrimeTables& tables) {
    const auto support = fam.support(T);
    const double M = fam.resolve_M(T, support);
    const DensityFunction h = fam.model().density_at(T);
    const double product = mertens_product([&](uint64_t p) { return h.at_prime(p); },
                                           h.params.B, M, tables);
    return M * product * fh_sum(f, h, M, tables);
}

double lower_bound_rhs(const WeightedFamily& fam, const ArithmeticFunction& f, double T,
                       const PrimeTables& tables) {
    const auto support = fam.support(T);
    const double M = fam.resolve_M(T, support);
    const DensityFunction h = fam.model().density_at(T);
    const double product = mertens_product([&](uint64_t p) { return h.at_prime(p); },
                                           0, M, tables);
    return M * product * fh_sum(f, h, M, tables);
}

BoundReport bound_scan_point(const WeightedFamily& fam, const ArithmeticFunction& f,
                             double T, const PrimeTables& tables,
                             const BoundScanOptions& options) {
    if (options.growth_params) {
        const ClassReport growth =
            check_growth_class(f, *options.growth_params, options.growth_check_limit, tables);
        if (!growth.pass())
            throw domain_error("bound_scan: f fails the growth-class check over " +
                               growth.checked);
    }

    const auto support = fam.support(T);
    const double M = fam.resolve_M(T, support);
    const DensityFunction h = fam.model().density_at(T);
    const auto [consts, lower_consts] = compute_constants(fam.model(), M);
    (void)lower_consts;

    BoundReport report;
    report.T = T;
    report.M = M;
    for (const auto& e : support) report.total_weight += e.weight;
    report.Z = options.z_override > 0 ? options.z_override : std::max(consts.Z, 16.0);

    KahanSum lhs;
    std::array<KahanSum, 4> cases;
    for (const auto& e : support) {
        if (e.weight == 0) continue;
        const FactoredInteger fc = factorize(e.value, tables);
        const double term = e.weight * f(fc);
        lhs.add(term);
        const CaseLabel label = classify_case(split_flat_rough(fc, report.Z), report.Z, consts);
        cases[static_cast<int>(label)].add(term);
        report.case_counts[static_cast<int>(label)] += 1;
    }
    report.lhs = lhs.sum;
    for (int i = 0; i < 4; ++i) report.case_contributions[i] = cases[i].sum;

    const double sum_fh = fh_sum(f, h, M, tables);
    const double upper_product = mertens_product(
        [&](uint64_t p) { return h.at_prime(p); }, h.params.B, M, tables);
    report.rhs_upper = M * upper_product * sum_fh;
    report.ratio_upper = report.lhs / report.rhs_upper;

    // The matching lower bound applies only to multiplicative f whose small
    // Omega-values stay away from zero, and needs 1 - h(p) > 0 down to p = 2.
    bool lower_ok = f.is_multiplicative();
    if (lower_ok) {
        const double inf_proxy =
            check_lower_positivity(f, options.positivity_L,
                                   std::min<uint64_t>(options.positivity_limit,
                                                      std::max<uint64_t>(2, static_cast<uint64_t>(M))),
                                   tables);
        lower_ok = inf_proxy > 0;
    }
    if (lower_ok) {
        try {
            const double lower_product = mertens_product(
                [&](uint64_t p) { return h.at_prime(p); }, 0, M, tables);
            report.rhs_lower = M * lower_product * sum_fh;
            report.ratio_lower = report.lhs / *report.rhs_lower;
        } catch (const domain_error&) {
            // h(p) >= 1 at some small prime: the lower bound is vacuous for
            // this h, so its fields stay absent.
        }
    }
    return report;
}

double case_envelope_scale(CaseLabel label, double M, double xi,
                           const DecompositionConstants& consts) {
    switch (label) {
        case CaseLabel::II:
            return std::pow(M, 1 - consts.beta1);
        case CaseLabel::III:
            return std::pow(M, 1 - consts.beta2);
        case CaseLabel::I:
        case CaseLabel::IV:
        default:
            return std::pow(M, 1 - xi / 3);
    }
}

std::vector<CaseTwoDiagnostic> case_two_diagnostics(const WeightedFamily& fam, double T,
                                                    double Z,
                                                    const DecompositionConstants& consts,
                                                    const PrimeTables& tables) {
    if (Z < 16) throw domain_error("case_two_diagnostics: split scale Z must be at least 16");
    const auto support = fam.support(T);
    const double M = fam.resolve_M(T, support);
    const double prime_cap = std::pow(Z, consts.eta3);
    const double power_floor = std::pow(Z, consts.eta2);
    const double level = std::pow(M, fam.model().theta);

    std::vector<CaseTwoDiagnostic> out;
    tables.for_primes_in(1, prime_cap, [&](uint64_t q) {
        if (static_cast<double>(q) >= prime_cap) return;
        CaseTwoDiagnostic d;
        d.q = q;
        uint32_t m_q = 1;
        double power = static_cast<double>(q);
        while (power <= power_floor) {
            power *= static_cast<double>(q);
            ++m_q;
        }
        const uint32_t n_q =
            static_cast<uint32_t>(std::floor(std::log(level) / std::log(double(q))));
        if (n_q == 0) return; // no admissible exponent at this level
        d.f_q = std::min(m_q, n_q);
        uint64_t modulus = 1;
        for (uint32_t k = 0; k < d.f_q; ++k) modulus *= q;
        d.modulus_weight = congruence_sum(support, modulus);
        out.push_back(d);
    });
    return out;
}

std::vector<BoundReport> bound_scan(const WeightedFamily& fam, const ArithmeticFunction& f,
                                    const std::vector<double>& T_grid,
                                    const PrimeTables& tables,
                                    const BoundScanOptions& options) {
    std::vector<BoundReport> reports;
    reports.reserve(T_grid.size());
    for (double T : T_grid) reports.push_back(bound_scan_point(fam, f, T, tables, options));
    // The total weight must escape to infinity with T; on a finite grid that
    // means strictly increasing.
    for (size_t i = 1; i < reports.size(); ++i)
        if (!(reports[i].total_weight > reports[i - 1].total_weight))
            throw domain_error("family total weight is not increasing along the T grid");
    return reports;
}

} // namespace sievelab
