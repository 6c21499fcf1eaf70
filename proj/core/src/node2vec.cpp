#include "lifegraph/node2vec.hpp"

#include <algorithm>
#include <map>

#include "lifegraph/errors.hpp"

namespace lifegraph {

void WalkConfig::validate() const {
    if (!(p > 0.0) || !(q > 0.0)) throw UsageError("walk parameters p and q must be positive");
    if (walk_length < 2) throw UsageError("walk_length must be >= 2");
    if (walks_per_node < 1) throw UsageError("walks_per_node must be >= 1");
}

WalkGraph::WalkGraph(const RetweetGraph& graph, bool directed) {
    adjacency_.resize(graph.n_nodes());
    for (std::uint32_t s = 0; s < graph.n_nodes(); ++s) {
        std::map<std::uint32_t, double> merged;
        for (const auto& e : graph.out_edges(s)) merged[e.target] += static_cast<double>(e.weight);
        if (!directed) {
            for (const auto& e : graph.in_edges(s)) merged[e.target] += static_cast<double>(e.weight);
        }
        adjacency_[s].assign(merged.begin(), merged.end());
    }
}

bool WalkGraph::has_edge(std::uint32_t from, std::uint32_t to) const {
    const auto& nbrs = adjacency_[from];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), to,
                               [](const std::pair<std::uint32_t, double>& e, std::uint32_t v) { return e.first < v; });
    return it != nbrs.end() && it->first == to;
}

std::vector<double> walk_step_weights(const WalkGraph& graph, std::uint32_t prev, std::uint32_t curr, double p,
                                      double q) {
    if (!graph.has_edge(prev, curr)) throw UsageError("walk_step_weights: prev is not adjacent to curr");
    const auto& nbrs = graph.neighbors(curr);
    std::vector<double> weights(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const auto [x, w] = nbrs[i];
        if (x == prev) {
            weights[i] = w / p;
        } else if (graph.has_edge(prev, x)) {
            weights[i] = w;
        } else {
            weights[i] = w / q;
        }
    }
    return weights;
}

namespace {

std::uint64_t pack_edge(std::uint32_t prev, std::uint32_t curr) {
    return (static_cast<std::uint64_t>(prev) << 32) | curr;
}

// Memory budget for precomputed second-order tables, in table cells.
constexpr std::size_t kPrecomputeCellBudget = 50'000'000;

} // namespace

Node2VecWalker::Node2VecWalker(const WalkGraph& graph, const WalkConfig& config) : graph_(graph), config_(config) {
    config_.validate();

    first_order_.resize(graph.n_nodes());
    for (std::uint32_t v = 0; v < graph.n_nodes(); ++v) {
        const auto& nbrs = graph.neighbors(v);
        if (nbrs.empty()) continue;
        std::vector<double> w(nbrs.size());
        for (std::size_t i = 0; i < nbrs.size(); ++i) w[i] = nbrs[i].second;
        first_order_[v] = std::make_unique<AliasTable>(w);
    }

    bool precompute = config_.mode == WalkConfig::TransitionMode::precomputed;
    if (config_.mode == WalkConfig::TransitionMode::automatic) {
        std::size_t cells = 0;
        for (std::uint32_t v = 0; v < graph.n_nodes(); ++v) {
            for (const auto& [u, w] : graph.neighbors(v)) cells += graph.neighbors(u).size();
        }
        precompute = cells <= kPrecomputeCellBudget;
    }
    if (precompute) {
        for (std::uint32_t prev = 0; prev < graph.n_nodes(); ++prev) {
            for (const auto& [curr, w] : graph.neighbors(prev)) {
                if (graph.neighbors(curr).empty()) continue;
                second_order_.emplace(pack_edge(prev, curr),
                                      std::make_unique<AliasTable>(
                                          walk_step_weights(graph, prev, curr, config_.p, config_.q)));
            }
        }
    }
}

std::optional<std::uint32_t> Node2VecWalker::step(std::optional<std::uint32_t> prev, std::uint32_t curr,
                                                  Rng& rng) const {
    const auto& nbrs = graph_.neighbors(curr);
    if (nbrs.empty()) return std::nullopt;
    if (!prev) return nbrs[first_order_[curr]->sample(rng)].first;

    if (!second_order_.empty()) {
        auto it = second_order_.find(pack_edge(*prev, curr));
        if (it != second_order_.end()) return nbrs[it->second->sample(rng)].first;
    }
    const AliasTable table(walk_step_weights(graph_, *prev, curr, config_.p, config_.q));
    return nbrs[table.sample(rng)].first;
}

std::vector<std::uint32_t> Node2VecWalker::walk_from(std::uint32_t start, Rng& rng) const {
    std::vector<std::uint32_t> walk{start};
    walk.reserve(config_.walk_length);
    std::optional<std::uint32_t> prev;
    std::uint32_t curr = start;
    while (walk.size() < config_.walk_length) {
        auto next = step(prev, curr, rng);
        if (!next) break;
        walk.push_back(*next);
        prev = curr;
        curr = *next;
    }
    return walk;
}

std::vector<std::vector<std::uint32_t>> generate_walks(const WalkGraph& graph, const WalkConfig& config) {
    config.validate();
    if (graph.n_nodes() == 0) throw DataError("cannot walk an empty graph");

    const Node2VecWalker walker(graph, config);
    std::vector<std::vector<std::uint32_t>> walks;
    walks.reserve(graph.n_nodes() * config.walks_per_node);
    for (std::uint32_t node = 0; node < graph.n_nodes(); ++node) {
        for (std::size_t k = 0; k < config.walks_per_node; ++k) {
            Rng rng = Rng::stream(config.seed, node, k);
            walks.push_back(walker.walk_from(node, rng));
        }
    }
    return walks;
}

} // namespace lifegraph
