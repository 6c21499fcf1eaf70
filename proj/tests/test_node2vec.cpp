#include "doctest.h"

#include <cmath>
#include <map>

#include "lifegraph/errors.hpp"
#include "lifegraph/node2vec.hpp"

using namespace lifegraph;

namespace {

RetweetGraph graph_from(const std::vector<std::tuple<std::string, std::string, std::int64_t>>& edges) {
    RetweetGraph g;
    for (const auto& [s, t, w] : edges) g.add_edge(s, t, w);
    g.canonicalize();
    return g;
}

std::map<std::uint32_t, double> normalized_step_weights(const WalkGraph& wg, std::uint32_t prev, std::uint32_t curr,
                                                        double p, double q) {
    const auto weights = walk_step_weights(wg, prev, curr, p, q);
    const auto& nbrs = wg.neighbors(curr);
    double total = 0;
    for (double w : weights) total += w;
    std::map<std::uint32_t, double> out;
    for (std::size_t i = 0; i < nbrs.size(); ++i) out[nbrs[i].first] = weights[i] / total;
    return out;
}

} // namespace

TEST_CASE("walk_step_weights on the path a-b-c") {
    // unit weights; prev=a, curr=b, p=2, q=0.5 -> {a: 0.5, c: 2.0}
    const RetweetGraph g = graph_from({{"a", "b", 1}, {"b", "c", 1}});
    const WalkGraph wg(g, false);
    const auto a = *g.node_index("a");
    const auto b = *g.node_index("b");
    const auto c = *g.node_index("c");

    const auto weights = walk_step_weights(wg, a, b, 2.0, 0.5);
    const auto& nbrs = wg.neighbors(b);
    REQUIRE(nbrs.size() == 2);
    std::map<std::uint32_t, double> by_node;
    for (std::size_t i = 0; i < nbrs.size(); ++i) by_node[nbrs[i].first] = weights[i];
    CHECK(by_node[a] == doctest::Approx(0.5));
    CHECK(by_node[c] == doctest::Approx(2.0));

    auto norm = normalized_step_weights(wg, a, b, 2.0, 0.5);
    CHECK(norm[a] == doctest::Approx(0.2));
    CHECK(norm[c] == doctest::Approx(0.8));
}

TEST_CASE("walk_step_weights on the triangle a-b-c") {
    // prev=a, curr=b: a gets 1/p, c (adjacent to a) gets 1
    const RetweetGraph g = graph_from({{"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1}});
    const WalkGraph wg(g, false);
    const auto a = *g.node_index("a");
    const auto b = *g.node_index("b");
    const auto c = *g.node_index("c");

    for (double p : {0.5, 1.0, 4.0}) {
        const auto weights = walk_step_weights(wg, a, b, p, 7.0);
        const auto& nbrs = wg.neighbors(b);
        std::map<std::uint32_t, double> by_node;
        for (std::size_t i = 0; i < nbrs.size(); ++i) by_node[nbrs[i].first] = weights[i];
        CHECK(by_node[a] == doctest::Approx(1.0 / p));
        CHECK(by_node[c] == doctest::Approx(1.0));  // q never applies
    }
}

TEST_CASE("p = q = 1 reduces to the plain weighted walk") {
    const RetweetGraph g = graph_from({{"a", "b", 3}, {"b", "c", 1}, {"b", "d", 6}, {"d", "a", 2}});
    const WalkGraph wg(g, false);
    const auto a = *g.node_index("a");
    const auto b = *g.node_index("b");
    const auto weights = walk_step_weights(wg, a, b, 1.0, 1.0);
    const auto& nbrs = wg.neighbors(b);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        CHECK(weights[i] == doctest::Approx(nbrs[i].second));
    }
    CHECK_THROWS_AS(walk_step_weights(wg, *g.node_index("c"), *g.node_index("a"), 1, 1), UsageError);
}

TEST_CASE("with p=q=1 empirical transitions match edge-weight proportions") {
    const RetweetGraph g = graph_from({{"a", "b", 3}, {"b", "c", 1}, {"b", "d", 6}, {"b", "e", 2}});
    const WalkGraph wg(g, false);
    WalkConfig config;
    config.p = 1.0;
    config.q = 1.0;
    const Node2VecWalker walker(wg, config);

    const auto a = *g.node_index("a");
    const auto b = *g.node_index("b");
    std::map<std::uint32_t, std::size_t> counts;
    Rng rng(5150);
    const std::size_t steps = 100'000;
    for (std::size_t i = 0; i < steps; ++i) ++counts[*walker.step(a, b, rng)];

    const double total = 3 + 1 + 6 + 2;
    double l1 = 0;
    for (const auto& [node, weight] : wg.neighbors(b)) {
        l1 += std::abs(static_cast<double>(counts[node]) / static_cast<double>(steps) - weight / total);
    }
    CHECK(l1 < 0.02);
}

TEST_CASE("generate_walks honors counts, lengths and dead ends") {
    const RetweetGraph g = graph_from({{"a", "b", 1}, {"c", "d", 1}});
    WalkConfig config;
    config.walk_length = 10;
    config.walks_per_node = 3;
    const WalkGraph wg(g, false);
    const auto walks = generate_walks(wg, config);
    CHECK(walks.size() == g.n_nodes() * config.walks_per_node);
    for (const auto& walk : walks) {
        CHECK(walk.size() == config.walk_length);  // no isolated nodes here
    }

    // 2-node graph: forced alternation
    const RetweetGraph pair = graph_from({{"x", "y", 1}});
    const auto pair_walks = generate_walks(WalkGraph(pair, false), config);
    for (const auto& walk : pair_walks) {
        for (std::size_t i = 1; i < walk.size(); ++i) CHECK(walk[i] != walk[i - 1]);
    }
}

TEST_CASE("isolated nodes produce length-1 walks") {
    // directed edge a->b with directed walks: b has no out-neighbors
    const RetweetGraph g = graph_from({{"a", "b", 1}});
    WalkConfig config;
    config.directed = true;
    config.walks_per_node = 2;
    const WalkGraph wg(g, true);
    const auto walks = generate_walks(wg, config);
    const auto b = *g.node_index("b");
    for (const auto& walk : walks) {
        if (walk[0] == b) CHECK(walk.size() == 1);
    }
}

TEST_CASE("walks are deterministic per (graph, seed)") {
    const RetweetGraph g = graph_from({{"a", "b", 1}, {"b", "c", 2}, {"c", "a", 1}, {"c", "d", 3}});
    const WalkGraph wg(g, false);
    WalkConfig config;
    config.seed = 77;
    CHECK(generate_walks(wg, config) == generate_walks(wg, config));
    WalkConfig other = config;
    other.seed = 78;
    CHECK(generate_walks(wg, config) != generate_walks(wg, other));
}

TEST_CASE("precomputed and on-the-fly transition modes agree") {
    const RetweetGraph g = graph_from({{"a", "b", 1}, {"b", "c", 2}, {"c", "a", 1}, {"c", "d", 3}, {"d", "b", 1}});
    const WalkGraph wg(g, false);
    WalkConfig pre;
    pre.mode = WalkConfig::TransitionMode::precomputed;
    pre.q = 0.5;
    WalkConfig fly = pre;
    fly.mode = WalkConfig::TransitionMode::on_the_fly;

    const Node2VecWalker walker_pre(wg, pre);
    const Node2VecWalker walker_fly(wg, fly);
    CHECK(walker_pre.precomputed());
    CHECK(!walker_fly.precomputed());

    // identical alias tables -> identical draws from identical rng streams
    const auto b = *g.node_index("b");
    const auto c = *g.node_index("c");
    Rng rng1(3), rng2(3);
    for (int i = 0; i < 2000; ++i) {
        CHECK(*walker_pre.step(b, c, rng1) == *walker_fly.step(b, c, rng2));
    }
}
