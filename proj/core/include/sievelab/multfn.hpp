#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sievelab/arith.hpp"

namespace sievelab {

/// Rule giving the value of a multiplicative function at a prime power.
using PrimePowerRule = std::function<double(uint64_t p, uint32_t e)>;

/// Nonnegative arithmetic function, either multiplicative (prime-power rule)
/// or an arbitrary pointwise evaluator.
class ArithmeticFunction {
public:
    static ArithmeticFunction multiplicative(std::string name, PrimePowerRule rule);
    static ArithmeticFunction pointwise(std::string name,
                                        std::function<double(uint64_t)> eval);

    // Built-ins.
    static ArithmeticFunction one();
    static ArithmeticFunction divisor_count();   // tau
    static ArithmeticFunction moebius_squared(); // mu^2
    static ArithmeticFunction prime_factor_power(double base); // base^Omega(n)

    const std::string& name() const { return name_; }
    bool is_multiplicative() const { return static_cast<bool>(rule_); }

    double operator()(const FactoredInteger& n) const;
    double operator()(uint64_t n, const PrimeTables& tables) const;

    /// Value at a single prime power; requires a multiplicative rule.
    double at_prime_power(uint64_t p, uint32_t e) const;

private:
    std::string name_;
    PrimePowerRule rule_;                        // multiplicative kind
    std::function<double(uint64_t)> eval_;       // pointwise kind
};

/// Flat table of values f(0..limit); f(0) slot unused. Useful when the same
/// function is summed over a range many times.
std::vector<double> tabulate(const ArithmeticFunction& f, uint64_t limit,
                             const PrimeTables& tables);

struct DensityParams {
    double kappa = 1;
    double lambda1 = 1;
    double lambda2 = 0;
    double B = 1;
    double K = 2;

    void validate() const;
};

/// Multiplicative density model h with its parameter vector. h(p^e) is meant
/// to approximate the share of family values divisible by p^e.
struct DensityFunction {
    PrimePowerRule rule;
    DensityParams params;

    double at_prime(uint64_t p) const { return rule(p, 1); }
    double operator()(const FactoredInteger& n) const;
    double operator()(uint64_t n, const PrimeTables& tables) const;

    /// h(p^e) = p^{-e}; the exact divisor density of the integers.
    static DensityFunction inverse_linear(DensityParams params = {});
};

struct GrowthParams {
    double A = 2;       // >= 1
    double epsilon = 1; // > 0
    double C = 2;       // > 0

    void validate() const;
};

/// One checked condition: pass/fail with the worst slack (checked quantity
/// divided by its bound; <= 1 everywhere means pass) and a witness.
struct ConditionResult {
    std::string name;
    bool pass = true;
    double worst_slack = 0;
    uint64_t witness_a = 0;
    uint64_t witness_b = 0;
};

/// Result of a finite-range class-membership check. `checked` describes the
/// ranges actually scanned; membership is certified only over those.
struct ClassReport {
    std::vector<ConditionResult> conditions;
    std::string checked;

    bool pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
};

/// Default logarithmic (w, z) grid: w, z in {3, 10, 100, ..., prime_limit},
/// w < z, restricted to w > B.
std::vector<std::pair<double, double>> default_density_grid(double B, uint64_t prime_limit);

/// Checks the three density-class conditions over finite ranges:
///   product condition  prod_{w <= p < z} (1-h(p))^{-1} <= (log z/log w)^kappa (1+K/log w)
///   prime bound        h(p^e) <= B/p for p > B
///   exponent decay     h(p^e) <= p^{-e lambda1 + lambda2}
/// A value h(p) >= 1 inside a product is reported as a product-condition
/// failure rather than thrown.
ClassReport check_density_class(const DensityFunction& h, uint64_t prime_limit,
                                uint32_t exponent_limit,
                                const std::vector<std::pair<double, double>>& grid,
                                const PrimeTables& tables);

/// Exhaustively checks f(mn) <= f(m) min{A^Omega(n), C n^epsilon} over all
/// coprime pairs with mn <= sample_limit.
ClassReport check_growth_class(const ArithmeticFunction& f, const GrowthParams& params,
                               uint64_t sample_limit, const PrimeTables& tables);

/// Desk-scale proxy for inf{f(m) : Omega(m) <= L}: the minimum over m <= m_limit.
double check_lower_positivity(const ArithmeticFunction& f, uint32_t L,
                              uint64_t m_limit, const PrimeTables& tables);

} // namespace sievelab
