#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sievelab/beta_sieve.hpp"

using namespace sievelab;
using fixtures::tables_small;
using fixtures::tables_medium;

namespace {

// Exhaustive divisor-sum of lambda over the divisors of n, by trial division.
double oracle_divisor_sum(const SieveWeights& w, uint64_t n) {
    double s = 0;
    for (uint64_t d : oracles::divisors_of(n)) s += w.lambda(d);
    return s;
}

bool oracle_coprime_to_sifting_range(uint64_t n, double z) {
    for (uint64_t p : oracles::trial_primes(static_cast<uint64_t>(z)))
        if (static_cast<double>(p) < z && n % p == 0) return false;
    return true;
}

} // namespace

TEST_SUITE_BEGIN("beta_sieve");

TEST_CASE("lambda_1 is one for every configuration") {
    for (double kappa : {0.5, 1.0, 2.0})
        for (double z : {5.0, 20.0})
            for (double y : {z * z, z * z * z}) {
                const auto up = build_weights(kappa, y, z, SieveSide::Upper, tables_small());
                const auto lo = build_weights(kappa, y, z, SieveSide::Lower, tables_small());
                CHECK(up.lambda(1) == 1.0);
                CHECK(lo.lambda(1) == 1.0);
            }
}

TEST_CASE("no sifting primes below 2: the table is {1 -> 1}") {
    const auto w = build_weights(1, 10, 2, SieveSide::Upper, tables_small());
    REQUIRE(w.entries.size() == 1);
    CHECK(w.entries[0] == std::pair<uint64_t, double>{1, 1.0});
}

TEST_CASE("construction rejects bad scales") {
    CHECK_THROWS_AS(build_weights(1, 0.5, 2, SieveSide::Upper, tables_small()), domain_error);
    CHECK_THROWS_AS(build_weights(1, 10, 0.9, SieveSide::Upper, tables_small()), domain_error);
    CHECK_THROWS_AS(build_weights(1, 4, 8, SieveSide::Upper, tables_small()), domain_error);
    CHECK_THROWS_AS(build_weights(0, 10, 2, SieveSide::Upper, tables_small()), domain_error);
}

TEST_CASE("example table at kappa=1, y=125, z=5") {
    const auto up = build_weights(1, 125, 5, SieveSide::Upper, tables_small());
    std::map<uint64_t, double> entries(up.entries.begin(), up.entries.end());
    CHECK(entries == std::map<uint64_t, double>{{1, 1}, {2, -1}, {3, -1}, {6, 1}});
    CHECK(oracle_divisor_sum(up, 30) >= 0.0);
}

TEST_CASE("all four weight invariants hold on a grid, checked exhaustively") {
    for (double z : {10.0, 50.0})
        for (double y : {z * z, z * z * z})
            for (SieveSide side : {SieveSide::Upper, SieveSide::Lower}) {
                const auto w = build_weights(1, y, z, side, tables_small());
                CHECK(w.lambda(1) == 1.0);
                for (const auto& [m, lam] : w.entries) {
                    REQUIRE(std::abs(lam) <= 1.0);
                    REQUIRE(static_cast<double>(m) < y);
                    REQUIRE(lam != 0.0);
                }
                // Sandwich against the coprimality indicator for every n <= 2e4.
                for (uint64_t n = 2; n <= 20'000; ++n) {
                    const double s = oracle_divisor_sum(w, n);
                    const double ind = oracle_coprime_to_sifting_range(n, z) ? 1.0 : 0.0;
                    if (side == SieveSide::Upper)
                        REQUIRE(s >= ind);
                    else
                        REQUIRE(s <= ind);
                }
            }
}

TEST_CASE("divisor sums collapse to one on coprime inputs") {
    const auto up = build_weights(1, 1000, 10, SieveSide::Upper, tables_small());
    const auto lo = build_weights(1, 1000, 10, SieveSide::Lower, tables_small());
    for (uint64_t n = 1; n <= 10'000; ++n) {
        if (!oracle_coprime_to_sifting_range(n, 10)) continue;
        const auto f = factorize(n, tables_small());
        REQUIRE(up.divisor_sum(f) == 1.0);
        REQUIRE(lo.divisor_sum(f) == 1.0);
    }
}

TEST_CASE("huge support cutoff degenerates to the full Moebius sum") {
    // With y above every truncation product the chains admit all squarefree
    // subsets, so the weighted sum telescopes to the product exactly.
    auto inv = [](uint64_t p) { return 1.0 / static_cast<double>(p); };
    for (SieveSide side : {SieveSide::Upper, SieveSide::Lower}) {
        const auto w = build_weights(1, 5000, 10, side, tables_small());
        REQUIRE(w.entries.size() == 16); // all subsets of {2, 3, 5, 7}
        for (const auto& [m, lam] : w.entries)
            CHECK(lam == double(factorize(m, tables_small()).moebius()));
        const auto acc = main_term_accuracy(w, inv, tables_small());
        CHECK(acc.relative_error <= 1e-14);
    }
}

TEST_CASE("weighted sums dominate the product from the correct side") {
    // For any density with 0 <= f(p) < 1, independence across primes turns
    // the divisor-sum sandwich into sum+ >= prod(1 - f(p)) >= sum-.
    for (double sigma : {1.0, 2.0, 3.0}) {
        for (double scale : {0.3, 1.0}) {
            auto f = [scale](uint64_t p) { return scale / static_cast<double>(p); };
            const double y = std::pow(30.0, sigma);
            const auto up = build_weights(1, y, 30, SieveSide::Upper, tables_small());
            const auto lo = build_weights(1, y, 30, SieveSide::Lower, tables_small());
            const auto au = main_term_accuracy(up, f, tables_small());
            const auto al = main_term_accuracy(lo, f, tables_small());
            CHECK(au.sum >= au.reference - 1e-12);
            CHECK(al.sum <= al.reference + 1e-12);
        }
    }
}

TEST_CASE("main term accuracy: zero density is exact") {
    const auto w = build_weights(1, 1000, 10, SieveSide::Upper, tables_small());
    const auto acc = main_term_accuracy(w, [](uint64_t) { return 0.0; }, tables_small());
    CHECK(acc.sum == 1.0);
    CHECK(acc.reference == 1.0);
    CHECK(acc.relative_error == 0.0);
}

TEST_CASE("main term accuracy shrinks as sigma grows") {
    auto inv = [](uint64_t p) { return 1.0 / static_cast<double>(p); };
    for (SieveSide side : {SieveSide::Upper, SieveSide::Lower}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double sigma : {1.0, 2.0, 3.0, 4.0, 5.0}) {
            const auto w =
                build_weights(1, std::pow(100.0, sigma), 100, side, tables_medium());
            const auto acc = main_term_accuracy(w, inv, tables_medium());
            CHECK(acc.relative_error <= prev);
            prev = acc.relative_error;
        }
    }
}

TEST_CASE("lower-side sum respects the explicit lower estimate") {
    auto inv = [](uint64_t p) { return 1.0 / static_cast<double>(p); };
    const double K = 2, beta = 1 + 9 * 1; // dimension kappa = 1
    for (double s : {2.0, 3.0}) {
        const auto w =
            build_weights(1, std::pow(100.0, s), 100, SieveSide::Lower, tables_medium());
        const auto acc = main_term_accuracy(w, inv, tables_medium());
        CHECK(acc.sum >= (1 - std::exp(beta - s) * std::pow(K, 10)) * acc.reference);
    }
}

TEST_CASE("main term accuracy rejects densities reaching 1") {
    const auto w = build_weights(1, 1000, 10, SieveSide::Upper, tables_small());
    CHECK_THROWS_AS(
        main_term_accuracy(w, [](uint64_t p) { return p == 2 ? 1.0 : 0.1; }, tables_small()),
        domain_error);
}

TEST_CASE("sifted sum: no sifting below 2 keeps the whole family") {
    const auto fam = make_identity_family();
    const double T = 100;
    const double xi4 = std::log(1.5) / std::log(100.0); // M^xi4 = 1.5 < 2
    const auto result = sifted_sum_upper(fam, 1, T, xi4, tables_small());
    CHECK(result.exact == 100.0);
}

TEST_CASE("sifted sum: exact count matches inclusion-exclusion") {
    const auto fam = make_identity_family();
    const double T = 10'000;
    const double xi4 = 0.25; // M^xi4 = 10
    const auto result = sifted_sum_upper(fam, 1, T, xi4, tables_small());
    const uint64_t expected = oracles::coprime_count(10'000, {2, 3, 5, 7});
    CHECK(expected == 2285); // 47 full periods of 210 plus 29 residues
    CHECK(result.exact == double(expected));
    CHECK_FALSE(result.log_scale_ok); // desk-scale M cannot satisfy log M > 4 K Gamma
}

TEST_CASE("sifted sum: envelope stays within a small factor of the count") {
    const auto fam = make_identity_family();
    const double T = 1'000'000;
    const double xi4 = std::log(100.0) / std::log(T); // M^xi4 = 100
    const auto result = sifted_sum_upper(fam, 3, T, xi4, fixtures::tables_large());
    CHECK(result.exact > 0);
    CHECK(std::isfinite(result.bound));
    CHECK(result.exact / result.bound < 5.0);
}

TEST_CASE("sifted sum rejects b beyond M^(theta/2)") {
    const auto fam = make_identity_family();
    CHECK_THROWS_AS(sifted_sum_upper(fam, 50, 100, 0.2, tables_small()), domain_error);
}

TEST_SUITE_END();
