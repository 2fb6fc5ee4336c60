#include <benchmark/benchmark.h>

#include "rmncs/synth.hpp"

namespace {

const rmncs::SynthCorpus& lis_corpus() {
    static const rmncs::SynthCorpus corpus = rmncs::generate(rmncs::lis_preset(1));
    return corpus;
}

void BM_WeightedCitationScores(benchmark::State& state) {
    const auto& ds = lis_corpus().dataset;
    const auto graph = rmncs::build_graph(ds, rmncs::SelfCitationPolicy::none);
    const std::vector<double> weights(ds.size(), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmncs::weighted_citation_scores(graph, weights));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(graph.edge_count()));
}
BENCHMARK(BM_WeightedCitationScores);

void BM_RunRecursionToConvergence(benchmark::State& state) {
    const auto& corpus = lis_corpus();
    const auto ds = corpus.dataset.with_scheme(corpus.single_field);
    const auto graph = rmncs::build_graph(ds, rmncs::SelfCitationPolicy::none);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmncs::run_recursion(graph, ds, {}));
    }
}
BENCHMARK(BM_RunRecursionToConvergence)->Unit(benchmark::kMillisecond);

void BM_RunRecursionFixedOrder(benchmark::State& state) {
    const auto& ds = lis_corpus().dataset;
    const auto graph = rmncs::build_graph(ds, rmncs::SelfCitationPolicy::none);
    rmncs::RecursionConfig config;
    config.target_order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmncs::run_recursion(graph, ds, config));
    }
}
BENCHMARK(BM_RunRecursionFixedOrder)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GenerateLisCorpus(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmncs::generate(rmncs::lis_preset(7)));
    }
}
BENCHMARK(BM_GenerateLisCorpus)->Unit(benchmark::kMillisecond);

void BM_BuildGraph(benchmark::State& state) {
    const auto& ds = lis_corpus().dataset;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmncs::build_graph(ds, rmncs::SelfCitationPolicy::none));
    }
}
BENCHMARK(BM_BuildGraph)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
