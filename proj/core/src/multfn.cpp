#include "sievelab/multfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sievelab {

ArithmeticFunction ArithmeticFunction::multiplicative(std::string name, PrimePowerRule rule) {
    ArithmeticFunction f;
    f.name_ = std::move(name);
    f.rule_ = std::move(rule);
    return f;
}

ArithmeticFunction ArithmeticFunction::pointwise(std::string name,
                                                 std::function<double(uint64_t)> eval) {
    ArithmeticFunction f;
    f.name_ = std::move(name);
    f.eval_ = std::move(eval);
    return f;
}

ArithmeticFunction ArithmeticFunction::one() {
    return multiplicative("one", [](uint64_t, uint32_t) { return 1.0; });
}

ArithmeticFunction ArithmeticFunction::divisor_count() {
    return multiplicative("tau", [](uint64_t, uint32_t e) { return double(e) + 1.0; });
}

ArithmeticFunction ArithmeticFunction::moebius_squared() {
    return multiplicative("mu_squared",
                          [](uint64_t, uint32_t e) { return e == 1 ? 1.0 : 0.0; });
}

ArithmeticFunction ArithmeticFunction::prime_factor_power(double base) {
    return multiplicative("power_of_omega",
                          [base](uint64_t, uint32_t e) { return std::pow(base, e); });
}

double ArithmeticFunction::operator()(const FactoredInteger& n) const {
    if (rule_) {
        double out = 1.0;
        for (const auto& [p, e] : n.factors) out *= rule_(p, e);
        return out;
    }
    return eval_(n.value);
}

double ArithmeticFunction::operator()(uint64_t n, const PrimeTables& tables) const {
    if (eval_) return eval_(n);
    return (*this)(factorize(n, tables));
}

double ArithmeticFunction::at_prime_power(uint64_t p, uint32_t e) const {
    if (!rule_)
        throw domain_error("function '" + name_ + "' has no prime-power rule");
    return rule_(p, e);
}

std::vector<double> tabulate(const ArithmeticFunction& f, uint64_t limit,
                             const PrimeTables& tables) {
    std::vector<double> table(limit + 1, 0.0);
    for (uint64_t n = 1; n <= limit; ++n) table[n] = f(n, tables);
    return table;
}

void DensityParams::validate() const {
    if (!(kappa > 0 && lambda1 > 0 && lambda2 >= 0 && B > 0 && K > 0))
        throw domain_error("density parameters must satisfy kappa, lambda1, B, K > 0 "
                           "and lambda2 >= 0");
}

double DensityFunction::operator()(const FactoredInteger& n) const {
    double out = 1.0;
    for (const auto& [p, e] : n.factors) out *= rule(p, e);
    return out;
}

double DensityFunction::operator()(uint64_t n, const PrimeTables& tables) const {
    return (*this)(factorize(n, tables));
}

DensityFunction DensityFunction::inverse_linear(DensityParams params) {
    DensityFunction h;
    h.rule = [](uint64_t p, uint32_t e) {
        return std::pow(static_cast<double>(p), -static_cast<double>(e));
    };
    h.params = params;
    return h;
}

void GrowthParams::validate() const {
    if (!(A >= 1 && epsilon > 0 && C > 0))
        throw domain_error("growth parameters must satisfy A >= 1, epsilon > 0, C > 0");
}

std::vector<std::pair<double, double>> default_density_grid(double B, uint64_t prime_limit) {
    std::vector<double> points;
    if (B < 3) points.push_back(3);
    for (double v = 10; v <= static_cast<double>(prime_limit); v *= 10)
        if (v > B) points.push_back(v);
    std::vector<std::pair<double, double>> grid;
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            grid.emplace_back(points[i], points[j]);
    return grid;
}

ClassReport check_density_class(const DensityFunction& h, uint64_t prime_limit,
                                uint32_t exponent_limit,
                                const std::vector<std::pair<double, double>>& grid,
                                const PrimeTables& tables) {
    h.params.validate();
    const double B = h.params.B;

    ClassReport report;
    report.checked = "primes <= " + std::to_string(prime_limit) +
                     ", exponents <= " + std::to_string(exponent_limit) +
                     ", " + std::to_string(grid.size()) + " grid pairs";

    ConditionResult product{"product_growth"};
    for (const auto& [w, z] : grid) {
        if (!(B < w && w < z && z <= static_cast<double>(prime_limit)))
            throw domain_error("density grid pair must satisfy B < w < z <= prime_limit");
        bool degenerate = false;
        double log_inv = 0.0;
        // Product over w <= p < z, closed at w, open at z.
        const auto& primes = tables.primes();
        auto it = std::lower_bound(primes.begin(), primes.end(), w,
                                   [](uint64_t p, double v) { return static_cast<double>(p) < v; });
        for (; it != primes.end() && static_cast<double>(*it) < z; ++it) {
            const double hp = h.at_prime(*it);
            if (hp >= 1) { degenerate = true; break; }
            log_inv -= std::log1p(-hp);
        }
        if (degenerate) {
            product.pass = false;
            product.worst_slack = std::numeric_limits<double>::infinity();
            product.witness_a = static_cast<uint64_t>(w);
            product.witness_b = static_cast<uint64_t>(z);
            continue;
        }
        const double bound = h.params.kappa * (std::log(std::log(z)) - std::log(std::log(w))) +
                             std::log1p(h.params.K / std::log(w));
        const double slack = std::exp(log_inv - bound);
        if (slack > product.worst_slack) {
            product.worst_slack = slack;
            product.witness_a = static_cast<uint64_t>(w);
            product.witness_b = static_cast<uint64_t>(z);
        }
        if (slack > 1) product.pass = false;
    }
    report.conditions.push_back(product);

    ConditionResult prime_bound{"prime_bound"};
    ConditionResult exponent_decay{"exponent_decay"};
    for (uint64_t p : tables.primes()) {
        if (p > prime_limit) break;
        for (uint32_t e = 1; e <= exponent_limit; ++e) {
            const double hpe = h.rule(p, e);
            if (hpe < 0)
                throw domain_error("density rule returned a negative value at p=" +
                                   std::to_string(p) + ", e=" + std::to_string(e));
            if (static_cast<double>(p) > B) {
                const double slack = hpe / (B / static_cast<double>(p));
                if (slack > prime_bound.worst_slack) {
                    prime_bound.worst_slack = slack;
                    prime_bound.witness_a = p;
                    prime_bound.witness_b = e;
                }
                if (slack > 1) prime_bound.pass = false;
            }
            const double decay_bound =
                std::pow(static_cast<double>(p),
                         -static_cast<double>(e) * h.params.lambda1 + h.params.lambda2);
            const double slack = hpe / decay_bound;
            if (slack > exponent_decay.worst_slack) {
                exponent_decay.worst_slack = slack;
                exponent_decay.witness_a = p;
                exponent_decay.witness_b = e;
            }
            if (slack > 1) exponent_decay.pass = false;
        }
    }
    report.conditions.push_back(prime_bound);
    report.conditions.push_back(exponent_decay);
    return report;
}

ClassReport check_growth_class(const ArithmeticFunction& f, const GrowthParams& params,
                               uint64_t sample_limit, const PrimeTables& tables) {
    params.validate();
    if (sample_limit < 2) throw domain_error("check_growth_class: sample_limit must be >= 2");

    std::vector<double> values = tabulate(f, sample_limit, tables);
    std::vector<uint32_t> omega(sample_limit + 1, 0);
    for (uint64_t n = 1; n <= sample_limit; ++n)
        omega[n] = factorize(n, tables).big_omega();

    ConditionResult cond{"submultiplicative_growth"};
    for (uint64_t m = 1; m <= sample_limit; ++m) {
        for (uint64_t n = 1; m * n <= sample_limit; ++n) {
            if (std::gcd(m, n) != 1) continue;
            const double cap = std::min(std::pow(params.A, omega[n]),
                                        params.C * std::pow(double(n), params.epsilon));
            const double lhs = values[m * n];
            const double rhs = values[m] * cap;
            const double slack = rhs > 0 ? lhs / rhs
                                         : (lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0);
            if (slack > cond.worst_slack) {
                cond.worst_slack = slack;
                cond.witness_a = m;
                cond.witness_b = n;
            }
        }
    }
    // Tiny tolerance so exact equality cases (e.g. f = 1 at n = 1) pass.
    cond.pass = cond.worst_slack <= 1 + 1e-12;

    ClassReport report;
    report.checked = "coprime pairs with mn <= " + std::to_string(sample_limit);
    report.conditions.push_back(cond);
    return report;
}

double check_lower_positivity(const ArithmeticFunction& f, uint32_t L,
                              uint64_t m_limit, const PrimeTables& tables) {
    if (m_limit < 2) throw domain_error("check_lower_positivity: m_limit must be >= 2");
    double best = std::numeric_limits<double>::infinity();
    for (uint64_t m = 1; m <= m_limit; ++m) {
        const FactoredInteger fm = factorize(m, tables);
        if (fm.big_omega() > L) continue;
        best = std::min(best, f(fm));
    }
    return best;
}

} // namespace sievelab
