#include <benchmark/benchmark.h>

#include "gsgp/stats.hpp"

using namespace gsgp;

namespace {

static void BM_TreeEvaluate(benchmark::State& state) {
    Rng rng(1);
    TreeGenConfig gen{2, static_cast<std::size_t>(state.range(0)), GenMethod::Full};
    ExpressionTree tree = random_tree(gen, rng);
    const SlopeDataset& ds = embedded_dataset();
    std::size_t row = 0;
    for (auto _ : state) {
        std::array<double, 6> f = ds[row].features();
        benchmark::DoNotOptimize(tree.evaluate(f));
        row = (row + 1) % ds.size();
    }
    state.SetLabel(std::to_string(tree.node_count()) + " nodes");
}
BENCHMARK(BM_TreeEvaluate)->Arg(4)->Arg(8)->Arg(12);

static void BM_GsgpGeneration(benchmark::State& state) {
    const SlopeDataset& ds = embedded_dataset();
    DataSplit split = head_split(ds, 40);
    DatasetView train(ds, split.train_indices), test(ds, split.test_indices);

    GsgpConfig cfg;
    cfg.population_size = static_cast<std::size_t>(state.range(0));
    cfg.seed = 5;
    LineageStore store;
    Rng rng(cfg.seed);
    auto pop = initialize(cfg, train, test, store, rng);
    for (auto _ : state) {
        pop = step_generation(pop, cfg, train, test, store, rng);
        benchmark::DoNotOptimize(pop.data());
    }
}
BENCHMARK(BM_GsgpGeneration)->Arg(100)->Arg(500);

static void BM_LineagePredict(benchmark::State& state) {
    const SlopeDataset& ds = embedded_dataset();
    DataSplit split = head_split(ds, 40);
    DatasetView train(ds, split.train_indices), test(ds, split.test_indices);

    GsgpConfig cfg;
    cfg.population_size = 100;
    cfg.generations = static_cast<std::size_t>(state.range(0));
    cfg.seed = 5;
    RunResult r = run_gsgp(cfg, train, test);
    std::array<double, 6> f = ds[0].features();
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict(*r.store, r.best, f));
    }
}
BENCHMARK(BM_LineagePredict)->Arg(10)->Arg(50);

static void BM_Wilcoxon(benchmark::State& state) {
    Rng rng(7);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> a(n), b(n);
    for (double& v : a) v = rng.uniform01();
    for (double& v : b) v = rng.uniform01();
    for (auto _ : state) {
        benchmark::DoNotOptimize(wilcoxon_rank_sum(a, b));
    }
}
BENCHMARK(BM_Wilcoxon)->Arg(8)->Arg(50);

} // namespace

BENCHMARK_MAIN();
