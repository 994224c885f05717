#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sievelab/multfn.hpp"

namespace sievelab {

/// Integer polynomial in up to three variables, stored as a sum of monomials.
struct Polynomial {
    struct Term {
        int64_t coefficient = 0;
        std::array<uint32_t, 3> exponents{0, 0, 0};
    };
    std::vector<Term> terms;
    uint32_t dimension = 1;

    int64_t eval(const std::array<int64_t, 3>& x) const;
    bool is_zero() const;

    /// Parses "c,e1[,e2[,e3]]" monomials separated by ';', e.g. "1,2;1,0" for
    /// x^2 + 1 in one variable.
    static Polynomial parse(const std::string& text, uint32_t dimension);
};

enum class MChoice {
    TotalWeight, // M(T) = sum of weights (the default)
    Scale,       // M(T) = T
};

/// Distribution model attached to a family: density h, normalization M(T),
/// level exponent theta, error exponent xi, and the value-growth cap
/// c_a <= b_tilde * M^alpha.
struct EquidistModel {
    DensityFunction h;
    /// Optional per-T density rule; none of the built-in families uses one,
    /// but models whose density genuinely drifts with T can hook in here.
    std::function<PrimePowerRule(double T)> h_rule_for_T;
    MChoice m_choice = MChoice::TotalWeight;
    double theta = 0.5;
    double xi = 0.9;
    double alpha = 1;
    double b_tilde = 1;

    /// The density in force at parameter T (the override when present).
    DensityFunction density_at(double T) const;

    void validate() const;
};

struct FamilyEntry {
    double weight = 0;
    uint64_t value = 0;
};

/// A weighted family: for each T a finite-support list of (weight, value)
/// pairs, plus the distribution model describing it.
class WeightedFamily {
public:
    WeightedFamily(std::string name, EquidistModel model,
                   std::function<std::vector<FamilyEntry>(double)> enumerate);

    const std::string& name() const { return name_; }
    const EquidistModel& model() const { return model_; }

    /// Materializes the support at parameter T and checks the growth cap
    /// c_a <= b_tilde * M(T)^alpha.
    std::vector<FamilyEntry> support(double T) const;

    /// Normalization M(T), resolved against an already-materialized support.
    double resolve_M(double T, const std::vector<FamilyEntry>& support) const;

private:
    std::string name_;
    EquidistModel model_;
    std::function<std::vector<FamilyEntry>(double)> enumerate_;
};

/// Weighted count of family values divisible by d.
double congruence_sum(const WeightedFamily& fam, uint64_t d, double T);
double congruence_sum(const std::vector<FamilyEntry>& support, uint64_t d);

struct DiagnosticsRow {
    uint64_t d = 0;
    double C_d = 0;
    double h_d_M = 0;
    double residual = 0;
    double score = 0;
};

struct DiagnosticsTable {
    double T = 0;
    double M = 0;
    std::vector<DiagnosticsRow> rows;
    double max_score = 0;
};

/// Residuals C_d(T) - h(d) M(T) for all d <= d_limit, each normalized by the
/// model's error envelope h(d) M prod_{B<p<=M, p∤d}(1-h(p))^2 + M^{1-xi}.
/// The maximum score is an empirical implied constant for the model.
DiagnosticsTable equidist_diagnostics(const WeightedFamily& fam, double T,
                                      uint64_t d_limit, const PrimeTables& tables);

/// Model used by the identity family: h(p^e) = p^{-e}, theta = 1/2, xi = 9/10,
/// alpha = 1, b_tilde = 1, with kappa = 1, lambda1 = 1, lambda2 = 0, B = 1, K = 2.
EquidistModel default_identity_model();

/// chi_T = indicator of [1, T] on the integers, c_n = n.
WeightedFamily make_identity_family(EquidistModel model = default_identity_model());

/// Integer points of the dilated box T*D (D given per-axis as [lo, hi]),
/// emitting |Q(x)| where Q(x) != 0.
WeightedFamily make_polynomial_box_family(const Polynomial& Q,
                                          const std::vector<std::pair<double, double>>& box,
                                          EquidistModel model);

/// Integer points x in [-T, T]^n with Q1(x) = 0 and Q2(x) != 0, emitting |Q2(x)|.
WeightedFamily make_variety_family(const Polynomial& Q1, const Polynomial& Q2,
                                   EquidistModel model);

/// Density rule for a polynomial family: h(p^e) is the share of residue
/// vectors x mod p^e with Q(x) = 0 mod p^e, found by exhaustive counting.
/// Counting work is p^{e*dim} residues and is capped by `budget`.
DensityFunction residue_density(const Polynomial& Q, DensityParams params,
                                uint64_t budget = 10'000'000);

} // namespace sievelab
