#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "srs/dataset.hpp"
#include "srs/population.hpp"
#include "srs/random.hpp"
#include "srs/tree.hpp"

namespace {

srs::Dataset sample_data(int p, int r, int n) {
    srs::GeneratorSpec spec;
    spec.scenario = srs::Scenario::chaining;
    spec.p = p;
    spec.r = r;
    spec.n = n;
    spec.noise = 0.05;
    spec.seed = 1234;
    return srs::generate(spec);
}

std::vector<int> first_features(int count) {
    std::vector<int> ids(count);
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

} // namespace

static void BM_BuildTreeRows(benchmark::State& state) {
    const auto ds = sample_data(40, 4, static_cast<int>(state.range(0)));
    const auto subspace = first_features(12);
    srs::Rng rng(7);
    for (auto _ : state) {
        auto tree = srs::build_tree(ds, subspace, 6, rng);
        benchmark::DoNotOptimize(tree.nodes.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildTreeRows)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_BuildTreeK(benchmark::State& state) {
    const auto ds = sample_data(40, 4, 2000);
    const auto subspace = first_features(12);
    srs::Rng rng(7);
    for (auto _ : state) {
        auto tree = srs::build_tree(ds, subspace, static_cast<int>(state.range(0)), rng);
        benchmark::DoNotOptimize(tree.nodes.data());
    }
}
BENCHMARK(BM_BuildTreeK)->Arg(1)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_BuildPopulationTree(benchmark::State& state) {
    // joint table over the subspace, 2^q cells, so q is the knob that hurts
    const int q = static_cast<int>(state.range(0));
    const auto pop =
        srs::PopulationModel::for_scenario(srs::Scenario::clique, 64, 4, 0.0);
    const auto subspace = first_features(q);
    srs::Rng rng(7);
    for (auto _ : state) {
        auto tree = srs::build_tree(pop, subspace, q, rng);
        benchmark::DoNotOptimize(tree.nodes.data());
    }
}
BENCHMARK(BM_BuildPopulationTree)->Arg(6)->Arg(10)->Arg(14);

static void BM_PredictEnsemble(benchmark::State& state) {
    const auto ds = sample_data(40, 4, 2000);
    const auto subspace = first_features(12);
    srs::Rng rng(7);
    std::vector<srs::DecisionTree> trees;
    for (int i = 0; i < 50; ++i) trees.push_back(srs::build_tree(ds, subspace, 6, rng));
    std::vector<int> row(ds.p);
    for (int j = 0; j < ds.p; ++j) row[j] = ds.value(0, j);
    for (auto _ : state) {
        benchmark::DoNotOptimize(srs::predict_ensemble(trees, row));
    }
}
BENCHMARK(BM_PredictEnsemble);

static void BM_MdiImportance(benchmark::State& state) {
    const auto ds = sample_data(40, 4, 8000);
    const auto subspace = first_features(12);
    srs::Rng rng(7);
    const auto tree = srs::build_tree(ds, subspace, 12, rng);
    for (auto _ : state) {
        auto scores = srs::mdi_importance(tree);
        benchmark::DoNotOptimize(scores);
    }
}
BENCHMARK(BM_MdiImportance);

BENCHMARK_MAIN();
