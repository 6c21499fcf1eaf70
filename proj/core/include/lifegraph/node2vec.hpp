#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "lifegraph/alias.hpp"
#include "lifegraph/retweet_graph.hpp"
#include "lifegraph/rng.hpp"

namespace lifegraph {

struct WalkConfig {
    double p = 1.0;             // return parameter
    double q = 0.5;             // in-out parameter; < 1 favors homophily
    std::size_t walk_length = 80;
    std::size_t walks_per_node = 10;
    std::uint64_t seed = 1;
    bool directed = false;      // default walks the symmetrized graph

    enum class TransitionMode { automatic, precomputed, on_the_fly };
    TransitionMode mode = TransitionMode::automatic;

    void validate() const;
};

// Weighted adjacency view the walker runs on. Undirected mode sums the two
// directed weights; neighbor lists are sorted by node index.
class WalkGraph {
public:
    WalkGraph(const RetweetGraph& graph, bool directed);

    std::size_t n_nodes() const { return adjacency_.size(); }
    const std::vector<std::pair<std::uint32_t, double>>& neighbors(std::uint32_t node) const {
        return adjacency_[node];
    }
    bool has_edge(std::uint32_t from, std::uint32_t to) const;

private:
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency_;
};

// Unnormalized second-order weights for stepping from curr (arrived from
// prev) to each neighbor of curr: w/p back to prev, w to prev's neighbors,
// w/q elsewhere. Order matches graph.neighbors(curr).
std::vector<double> walk_step_weights(const WalkGraph& graph, std::uint32_t prev, std::uint32_t curr, double p,
                                      double q);

// Biased second-order random walker. Second-order transition tables are
// alias-sampled; they are precomputed per directed (prev, curr) edge when the
// table mass fits the configured budget, otherwise built on the fly per step.
// Both modes draw from the same distributions.
class Node2VecWalker {
public:
    Node2VecWalker(const WalkGraph& graph, const WalkConfig& config);

    // One step: returns the next node, or nullopt at a dead end.
    std::optional<std::uint32_t> step(std::optional<std::uint32_t> prev, std::uint32_t curr, Rng& rng) const;

    std::vector<std::uint32_t> walk_from(std::uint32_t start, Rng& rng) const;

    bool precomputed() const { return !second_order_.empty(); }

private:
    const WalkGraph& graph_;
    WalkConfig config_;
    std::vector<std::unique_ptr<AliasTable>> first_order_;
    // keyed by (prev, curr) packed into 64 bits
    std::unordered_map<std::uint64_t, std::unique_ptr<AliasTable>> second_order_;
};

// walks_per_node walks from every node, in node-index-major, walk-index-minor
// order; each walk's RNG stream is derived from (seed, node, walk index).
std::vector<std::vector<std::uint32_t>> generate_walks(const WalkGraph& graph, const WalkConfig& config);

} // namespace lifegraph
