#include <benchmark/benchmark.h>

#include "lifegraph/alias.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/forceatlas2.hpp"
#include "lifegraph/node2vec.hpp"
#include "lifegraph/retweet_graph.hpp"
#include "lifegraph/rng.hpp"
#include "lifegraph/sgns.hpp"
#include "lifegraph/text.hpp"

namespace {

using namespace lifegraph;

RetweetGraph random_graph(std::size_t n, std::size_t edges_per_node, std::uint64_t seed) {
    Rng rng(seed);
    RetweetGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = 0; e < edges_per_node; ++e) {
            const auto j = rng.next_below(n);
            if (j != i) {
                g.add_edge("n" + std::to_string(i), "n" + std::to_string(j),
                           1 + static_cast<std::int64_t>(rng.next_below(4)));
            }
        }
    }
    g.canonicalize();
    return g;
}

void BM_AliasSample(benchmark::State& state) {
    Rng rng(1);
    std::vector<double> weights(static_cast<std::size_t>(state.range(0)));
    for (auto& w : weights) w = rng.next_double(0.1, 10.0);
    const AliasTable table(weights);
    Rng draw(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(table.sample(draw));
    }
}
BENCHMARK(BM_AliasSample)->Arg(16)->Arg(1024)->Arg(65536);

void BM_Preprocess(benchmark::State& state) {
    const std::string text = "kaixo @lagun1 hau da nire txioa https://t.co/abcdef #gabonak #eguberri zer moduz";
    for (auto _ : state) {
        benchmark::DoNotOptimize(preprocess(text));
    }
}
BENCHMARK(BM_Preprocess);

void BM_ExtractFeatures(benchmark::State& state) {
    const std::string text = "buaaa zelako parranda jajaja bihar ikasi behar dugu baina gaur ez";
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_features(text));
    }
}
BENCHMARK(BM_ExtractFeatures);

void BM_GenerateWalks(benchmark::State& state) {
    const RetweetGraph g = random_graph(static_cast<std::size_t>(state.range(0)), 5, 3);
    const WalkGraph wg(g, false);
    WalkConfig config;
    config.walk_length = 40;
    config.walks_per_node = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_walks(wg, config));
    }
}
BENCHMARK(BM_GenerateWalks)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SgnsEpoch(benchmark::State& state) {
    const RetweetGraph g = random_graph(300, 5, 4);
    const WalkGraph wg(g, false);
    WalkConfig walk;
    walk.walk_length = 40;
    walk.walks_per_node = 4;
    const auto walks = generate_walks(wg, walk);
    SgnsConfig config;
    config.dimensions = 64;
    config.epochs = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_sgns(walks, config));
    }
}
BENCHMARK(BM_SgnsEpoch)->Unit(benchmark::kMillisecond);

void BM_LayoutStepExact(benchmark::State& state) {
    const RetweetGraph g = random_graph(static_cast<std::size_t>(state.range(0)), 4, 5);
    const LayoutGraph lg = LayoutGraph::from(g);
    LayoutConfig config;
    config.barnes_hut = 0;
    LayoutState st = layout_init(lg, config);
    for (auto _ : state) {
        layout_step(lg, config, st);
    }
}
BENCHMARK(BM_LayoutStepExact)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LayoutStepBarnesHut(benchmark::State& state) {
    const RetweetGraph g = random_graph(static_cast<std::size_t>(state.range(0)), 4, 5);
    const LayoutGraph lg = LayoutGraph::from(g);
    LayoutConfig config;
    config.barnes_hut = 1;
    LayoutState st = layout_init(lg, config);
    for (auto _ : state) {
        layout_step(lg, config, st);
    }
}
BENCHMARK(BM_LayoutStepBarnesHut)->Arg(200)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
