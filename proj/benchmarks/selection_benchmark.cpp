#include <benchmark/benchmark.h>

#include "srs/dataset.hpp"
#include "srs/information.hpp"
#include "srs/population.hpp"
#include "srs/srs.hpp"

static void BM_FiniteSelection(benchmark::State& state) {
    srs::GeneratorSpec gen;
    gen.scenario = srs::Scenario::madelon_like;
    gen.p = static_cast<int>(state.range(0));
    gen.r = 8;
    gen.n = 1000;
    gen.noise = 0.05;
    gen.seed = 21;
    const auto ds = srs::generate(gen);

    srs::SrsConfig cfg;
    cfg.q = 50;
    cfg.T = 20;
    cfg.alpha = 0.5;
    cfg.K = 25;
    cfg.probe_count = 5;
    cfg.probe_margin = 2.0;
    cfg.probe_floor = 0.01;
    cfg.min_rows = 50;
    cfg.seed = 22;
    for (auto _ : state) {
        auto result = srs::run_srs(ds, cfg);
        benchmark::DoNotOptimize(result.found.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.T);
}
BENCHMARK(BM_FiniteSelection)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_PopulationSelection(benchmark::State& state) {
    const auto pop =
        srs::PopulationModel::for_scenario(srs::Scenario::chaining, 200, 4, 0.0);
    srs::SrsConfig cfg;
    cfg.q = static_cast<int>(state.range(0));
    cfg.T = 40;
    cfg.alpha = 1.0;
    cfg.K = cfg.q;
    cfg.seed = 23;
    for (auto _ : state) {
        auto result = srs::run_srs(pop, cfg);
        benchmark::DoNotOptimize(result.found.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.T);
}
BENCHMARK(BM_PopulationSelection)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_MarkovBoundary(benchmark::State& state) {
    // exhaustive subset scan, exponential in the variable count
    const int p = static_cast<int>(state.range(0));
    const auto pop = srs::PopulationModel::for_scenario(srs::Scenario::clique, p, 3, 0.1);
    std::vector<int> all(p);
    for (int j = 0; j < p; ++j) all[j] = j;
    const auto joint = pop.joint_over(all);
    for (auto _ : state) {
        auto boundary = srs::markov_boundary(joint);
        benchmark::DoNotOptimize(boundary.members.data());
    }
}
BENCHMARK(BM_MarkovBoundary)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
