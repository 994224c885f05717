#include "sievelab/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

namespace sievelab {

namespace {
constexpr uint64_t kMaxSupportPoints = 10'000'000;
}

int64_t Polynomial::eval(const std::array<int64_t, 3>& x) const {
    __int128 acc = 0;
    for (const auto& t : terms) {
        __int128 v = t.coefficient;
        for (uint32_t i = 0; i < 3; ++i)
            for (uint32_t k = 0; k < t.exponents[i]; ++k) v *= x[i];
        acc += v;
    }
    if (acc > std::numeric_limits<int64_t>::max() || acc < std::numeric_limits<int64_t>::min())
        throw domain_error("polynomial value overflows 64-bit range");
    return static_cast<int64_t>(acc);
}

bool Polynomial::is_zero() const {
    for (const auto& t : terms)
        if (t.coefficient != 0) return false;
    return true;
}

Polynomial Polynomial::parse(const std::string& text, uint32_t dimension) {
    if (dimension < 1 || dimension > 3)
        throw config_error("polynomial dimension must be 1, 2 or 3");
    Polynomial poly;
    poly.dimension = dimension;
    std::stringstream terms(text);
    std::string item;
    while (std::getline(terms, item, ';')) {
        std::stringstream fields(item);
        std::string field;
        std::vector<int64_t> numbers;
        while (std::getline(fields, field, ',')) {
            size_t pos = 0;
            int64_t v = 0;
            try {
                v = std::stoll(field, &pos);
            } catch (const std::exception&) {
                throw config_error("bad polynomial term '" + item + "'");
            }
            while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
            if (pos != field.size())
                throw config_error("bad polynomial term '" + item + "'");
            numbers.push_back(v);
        }
        if (numbers.size() < 2 || numbers.size() > 1 + dimension)
            throw config_error("polynomial term '" + item + "' needs a coefficient and up to " +
                               std::to_string(dimension) + " exponents");
        Polynomial::Term term;
        term.coefficient = numbers[0];
        for (size_t i = 1; i < numbers.size(); ++i) {
            if (numbers[i] < 0) throw config_error("polynomial exponents must be nonnegative");
            term.exponents[i - 1] = static_cast<uint32_t>(numbers[i]);
        }
        poly.terms.push_back(term);
    }
    if (poly.terms.empty()) throw config_error("empty polynomial");
    return poly;
}

DensityFunction EquidistModel::density_at(double T) const {
    if (!h_rule_for_T) return h;
    DensityFunction out;
    out.rule = h_rule_for_T(T);
    out.params = h.params;
    return out;
}

void EquidistModel::validate() const {
    if (!(theta > 0 && xi > 0 && std::max(theta, xi) < 1))
        throw domain_error("model requires 0 < theta, xi and max(theta, xi) < 1");
    if (!(alpha > 0 && b_tilde > 0))
        throw domain_error("model requires alpha > 0 and b_tilde > 0");
    h.params.validate();
}

WeightedFamily::WeightedFamily(std::string name, EquidistModel model,
                               std::function<std::vector<FamilyEntry>(double)> enumerate)
    : name_(std::move(name)), model_(std::move(model)), enumerate_(std::move(enumerate)) {
    model_.validate();
}

std::vector<FamilyEntry> WeightedFamily::support(double T) const {
    std::vector<FamilyEntry> entries = enumerate_(T);
    const double M = resolve_M(T, entries);
    const double cap = model_.b_tilde * std::pow(M, model_.alpha);
    for (const auto& e : entries) {
        if (e.weight < 0) throw domain_error("family weights must be nonnegative");
        if (e.value == 0) throw domain_error("family values must be strictly positive");
        if (e.weight > 0 && static_cast<double>(e.value) > cap)
            throw domain_error("family '" + name_ + "' violates the growth cap: value " +
                               std::to_string(e.value) + " > b_tilde*M^alpha = " +
                               std::to_string(cap));
    }
    return entries;
}

double WeightedFamily::resolve_M(double T, const std::vector<FamilyEntry>& support) const {
    switch (model_.m_choice) {
        case MChoice::Scale:
            return T;
        case MChoice::TotalWeight:
        default: {
            double total = 0;
            for (const auto& e : support) total += e.weight;
            return total;
        }
    }
}

double congruence_sum(const std::vector<FamilyEntry>& support, uint64_t d) {
    if (d == 0) throw domain_error("congruence_sum: modulus must be positive");
    double total = 0;
    for (const auto& e : support)
        if (e.value % d == 0) total += e.weight;
    return total;
}

double congruence_sum(const WeightedFamily& fam, uint64_t d, double T) {
    return congruence_sum(fam.support(T), d);
}

DiagnosticsTable equidist_diagnostics(const WeightedFamily& fam, double T,
                                      uint64_t d_limit, const PrimeTables& tables) {
    const auto support = fam.support(T);
    const double M = fam.resolve_M(T, support);
    const EquidistModel& model = fam.model();
    if (static_cast<double>(d_limit) > std::pow(M, model.theta))
        throw domain_error("equidist_diagnostics: d_limit exceeds M^theta");

    // One pass over the support, crediting each entry to its divisors <= d_limit.
    std::vector<double> C(d_limit + 1, 0.0);
    for (const auto& e : support) {
        if (e.weight == 0) continue;
        const FactoredInteger fv = factorize(e.value, tables);
        for_each_divisor(fv, d_limit, [&](uint64_t d) { C[d] += e.weight; });
    }

    const DensityFunction h = model.density_at(T);
    const double B = h.params.B;
    const double base_log = [&] {
        double s = 0;
        tables.for_primes_in(B, M, [&](uint64_t p) {
            const double hp = h.at_prime(p);
            if (hp < 0 || hp >= 1)
                throw domain_error("equidist_diagnostics: h(" + std::to_string(p) +
                                   ") outside [0, 1)");
            s += std::log1p(-hp);
        });
        return s;
    }();
    const double error_floor = std::pow(M, 1 - model.xi);

    DiagnosticsTable table;
    table.T = T;
    table.M = M;
    for (uint64_t d = 1; d <= d_limit; ++d) {
        const FactoredInteger fd = factorize(d, tables);
        const double hd = h(fd);
        if (hd < 0 || !std::isfinite(hd))
            throw domain_error("equidist_diagnostics: h(" + std::to_string(d) +
                               ") is not a finite nonnegative value");
        // Remove the primes dividing d from the base product.
        double log_prod = base_log;
        for (const auto& [p, e] : fd.factors)
            if (static_cast<double>(p) > B && static_cast<double>(p) <= M)
                log_prod -= std::log1p(-h.at_prime(p));
        const double envelope = hd * M * std::exp(2 * log_prod) + error_floor;
        DiagnosticsRow row;
        row.d = d;
        row.C_d = C[d];
        row.h_d_M = hd * M;
        row.residual = C[d] - hd * M;
        row.score = std::abs(row.residual) / envelope;
        table.max_score = std::max(table.max_score, row.score);
        table.rows.push_back(row);
    }
    return table;
}

EquidistModel default_identity_model() {
    EquidistModel model;
    model.h = DensityFunction::inverse_linear(
        DensityParams{/*kappa=*/1, /*lambda1=*/1, /*lambda2=*/0, /*B=*/1, /*K=*/2});
    model.m_choice = MChoice::TotalWeight;
    model.theta = 0.5;
    model.xi = 0.9;
    model.alpha = 1;
    model.b_tilde = 1;
    return model;
}

WeightedFamily make_identity_family(EquidistModel model) {
    return WeightedFamily("identity", std::move(model), [](double T) {
        if (T < 1) return std::vector<FamilyEntry>{};
        const uint64_t n = static_cast<uint64_t>(T);
        if (n > kMaxSupportPoints) throw domain_error("identity family support exceeds 10^7 points");
        std::vector<FamilyEntry> out;
        out.reserve(n);
        for (uint64_t k = 1; k <= n; ++k) out.push_back({1.0, k});
        return out;
    });
}

namespace {

// Iterates integer vectors with coordinates in [lo[i], hi[i]].
template <typename Fn>
void scan_box(const std::vector<std::pair<int64_t, int64_t>>& ranges, Fn&& fn) {
    uint64_t count = 1;
    for (const auto& [lo, hi] : ranges) {
        if (hi < lo) return;
        const uint64_t width = static_cast<uint64_t>(hi - lo + 1);
        if (count > kMaxSupportPoints / width)
            throw domain_error("family support exceeds 10^7 points");
        count *= width;
    }
    std::array<int64_t, 3> x{0, 0, 0};
    const size_t dim = ranges.size();
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == dim) {
            fn(x);
            return;
        }
        for (int64_t v = ranges[i].first; v <= ranges[i].second; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace

WeightedFamily make_polynomial_box_family(const Polynomial& Q,
                                          const std::vector<std::pair<double, double>>& box,
                                          EquidistModel model) {
    if (Q.is_zero()) throw domain_error("polynomial-box family: zero polynomial");
    if (box.size() != Q.dimension)
        throw domain_error("polynomial-box family: box dimension mismatch");
    for (const auto& [lo, hi] : box)
        if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
            throw domain_error("polynomial-box family: box must be bounded");
    return WeightedFamily("polynomial_box", std::move(model), [Q, box](double T) {
        std::vector<std::pair<int64_t, int64_t>> ranges;
        for (const auto& [lo, hi] : box)
            ranges.emplace_back(static_cast<int64_t>(std::ceil(lo * T)),
                                static_cast<int64_t>(std::floor(hi * T)));
        std::vector<FamilyEntry> out;
        scan_box(ranges, [&](const std::array<int64_t, 3>& x) {
            const int64_t v = Q.eval(x);
            if (v != 0) out.push_back({1.0, static_cast<uint64_t>(v < 0 ? -v : v)});
        });
        return out;
    });
}

WeightedFamily make_variety_family(const Polynomial& Q1, const Polynomial& Q2,
                                   EquidistModel model) {
    if (Q1.is_zero() || Q2.is_zero()) throw domain_error("variety family: zero polynomial");
    if (Q1.dimension != Q2.dimension)
        throw domain_error("variety family: polynomials must share a dimension");
    return WeightedFamily("variety", std::move(model), [Q1, Q2](double T) {
        const int64_t bound = static_cast<int64_t>(std::floor(T));
        std::vector<std::pair<int64_t, int64_t>> ranges(Q1.dimension, {-bound, bound});
        std::vector<FamilyEntry> out;
        scan_box(ranges, [&](const std::array<int64_t, 3>& x) {
            if (Q1.eval(x) != 0) return;
            const int64_t v = Q2.eval(x);
            if (v != 0) out.push_back({1.0, static_cast<uint64_t>(v < 0 ? -v : v)});
        });
        return out;
    });
}

DensityFunction residue_density(const Polynomial& Q, DensityParams params, uint64_t budget) {
    if (Q.is_zero()) throw domain_error("residue_density: zero polynomial");
    auto cache = std::make_shared<std::map<std::pair<uint64_t, uint32_t>, double>>();
    const uint32_t dim = Q.dimension;
    DensityFunction h;
    h.params = params;
    h.rule = [Q, cache, dim, budget](uint64_t p, uint32_t e) {
        const auto key = std::make_pair(p, e);
        if (auto it = cache->find(key); it != cache->end()) return it->second;
        double modulus = std::pow(static_cast<double>(p), static_cast<double>(e));
        if (std::pow(modulus, static_cast<double>(dim)) > static_cast<double>(budget))
            throw domain_error("residue_density: exhaustive count for p^e = " +
                               std::to_string(p) + "^" + std::to_string(e) +
                               " exceeds the counting budget");
        const int64_t m = static_cast<int64_t>(modulus);
        std::vector<std::pair<int64_t, int64_t>> ranges(dim, {0, m - 1});
        uint64_t zeros = 0, total = 0;
        scan_box(ranges, [&](const std::array<int64_t, 3>& x) {
            ++total;
            // Reduce the polynomial value mod p^e; eval is exact in 64 bits
            // only for small residues, so reduce monomial-by-monomial.
            __int128 acc = 0;
            for (const auto& t : Q.terms) {
                __int128 v = t.coefficient % m;
                for (uint32_t i = 0; i < 3; ++i)
                    for (uint32_t k = 0; k < t.exponents[i]; ++k) v = (v * x[i]) % m;
                acc = (acc + v) % m;
            }
            if (acc % m == 0) ++zeros;
        });
        const double value = static_cast<double>(zeros) / static_cast<double>(total);
        (*cache)[key] = value;
        return value;
    };
    return h;
}

} // namespace sievelab
