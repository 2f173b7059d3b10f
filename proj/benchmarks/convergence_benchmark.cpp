#include <benchmark/benchmark.h>

#include "srs/convergence.hpp"
#include "srs/random.hpp"

namespace {

srs::ScenarioSpec marginal_spec(int p, int q, int r, double alpha) {
    srs::ScenarioSpec spec;
    spec.scenario = srs::Scenario::marginal;
    spec.p = p;
    spec.q = q;
    spec.r = r;
    spec.alpha = alpha;
    return spec;
}

} // namespace

static void BM_BuildChain(benchmark::State& state) {
    const auto spec = marginal_spec(10000, 100, static_cast<int>(state.range(0)), 0.0);
    for (auto _ : state) {
        auto model = srs::build_chain(spec);
        benchmark::DoNotOptimize(model.transition.data());
    }
}
BENCHMARK(BM_BuildChain)->Arg(10)->Arg(50)->Arg(100);

static void BM_AbsorptionTime(benchmark::State& state) {
    const auto model =
        srs::build_chain(marginal_spec(10000, 100, static_cast<int>(state.range(0)), 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(srs::expected_absorption_time(model));
    }
}
BENCHMARK(BM_AbsorptionTime)->Arg(10)->Arg(100);

static void BM_FoundCurve(benchmark::State& state) {
    const auto model = srs::build_chain(marginal_spec(10000, 100, 50, 1.0));
    for (auto _ : state) {
        auto curve = srs::expected_found_curve(model, 2000);
        benchmark::DoNotOptimize(curve.data());
    }
}
BENCHMARK(BM_FoundCurve);

static void BM_ReferenceTables(benchmark::State& state) {
    const auto configs = srs::default_table_configs();
    for (auto _ : state) {
        auto rows = srs::reproduce_tables(configs);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(configs.size()));
}
BENCHMARK(BM_ReferenceTables)->Unit(benchmark::kMillisecond);

static void BM_SimulateProcess(benchmark::State& state) {
    const auto spec = marginal_spec(200, 20, 5, 0.5);
    const int replicates = static_cast<int>(state.range(0));
    srs::Rng rng(99);
    for (auto _ : state) {
        auto result = srs::simulate_process(spec, replicates, rng, 0,
                                            static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(result.times.data());
    }
    state.SetItemsProcessed(state.iterations() * replicates);
}
BENCHMARK(BM_SimulateProcess)
    ->Args({200, 1})
    ->Args({200, 4})
    ->Args({2000, 4})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
