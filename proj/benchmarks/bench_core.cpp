#include <benchmark/benchmark.h>

#include <cmath>

#include "sievelab/beta_sieve.hpp"
#include "sievelab/bounds.hpp"
#include "sievelab/lemma_lab.hpp"

using namespace sievelab;

namespace {

const PrimeTables& tables() {
    static PrimeTables t(2'000'000);
    return t;
}

void BM_PrimeTables(benchmark::State& state) {
    const uint64_t limit = state.range(0);
    for (auto _ : state) {
        PrimeTables t(limit);
        benchmark::DoNotOptimize(t.primes().size());
    }
}
BENCHMARK(BM_PrimeTables)->Arg(100'000)->Arg(1'000'000);

void BM_Factorize(benchmark::State& state) {
    const auto& t = tables();
    uint64_t n = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(factorize(n, t).big_omega());
        n = n % 1'000'000 + 2;
    }
}
BENCHMARK(BM_Factorize);

void BM_BuildWeights(benchmark::State& state) {
    const double sigma = state.range(0);
    const double y = std::pow(100.0, sigma);
    for (auto _ : state) {
        auto w = build_weights(1.0, y, 100.0, SieveSide::Upper, tables());
        benchmark::DoNotOptimize(w.entries.size());
    }
}
BENCHMARK(BM_BuildWeights)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_MainTermAccuracy(benchmark::State& state) {
    const auto w = build_weights(1.0, 1e8, 100.0, SieveSide::Upper, tables());
    auto f = [](uint64_t p) { return 1.0 / double(p); };
    for (auto _ : state) benchmark::DoNotOptimize(main_term_accuracy(w, f, tables()).sum);
}
BENCHMARK(BM_MainTermAccuracy);

void BM_SmoothSeries(benchmark::State& state) {
    EnvelopeParams params;
    params.Psi = 100;
    params.a_max = state.range(0);
    const auto F = standard_weight();
    const auto G = ArithmeticFunction::one();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            smooth_tail_vs_series(F, G, params, tables()).implied_constant);
}
BENCHMARK(BM_SmoothSeries)->Arg(1'000'000)->Arg(10'000'000);

void BM_BoundScanPoint(benchmark::State& state) {
    EquidistModel model = default_identity_model();
    model.m_choice = MChoice::Scale;
    const auto fam = make_identity_family(model);
    const auto f = ArithmeticFunction::divisor_count();
    const double T = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(bound_scan_point(fam, f, T, tables()).ratio_upper);
}
BENCHMARK(BM_BoundScanPoint)->Arg(10'000)->Arg(100'000);

void BM_EquidistDiagnostics(benchmark::State& state) {
    EquidistModel model = default_identity_model();
    model.m_choice = MChoice::Scale;
    const auto fam = make_identity_family(model);
    for (auto _ : state)
        benchmark::DoNotOptimize(equidist_diagnostics(fam, 100'000, 300, tables()).max_score);
}
BENCHMARK(BM_EquidistDiagnostics);

} // namespace

BENCHMARK_MAIN();
