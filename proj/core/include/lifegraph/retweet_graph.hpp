#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lifegraph/corpus.hpp"

namespace lifegraph {

// Directed weighted user graph. Edge u -> v with weight w means u retweeted
// v w times. Node ids are dense indices; names map back to user ids.
class RetweetGraph {
public:
    struct Edge {
        std::uint32_t target;
        std::int64_t weight;
    };

    std::uint32_t add_node(const std::string& user_id);
    std::optional<std::uint32_t> node_index(const std::string& user_id) const;
    const std::string& node_name(std::uint32_t idx) const { return names_[idx]; }
    std::size_t n_nodes() const { return names_.size(); }
    std::size_t n_edges() const { return n_edges_; }

    // Accumulates weight onto the (source, target) edge. Self-loops are the
    // caller's concern; this class rejects them.
    void add_edge(const std::string& source, const std::string& target, std::int64_t weight = 1);

    const std::vector<Edge>& out_edges(std::uint32_t node) const { return out_[node]; }
    const std::vector<Edge>& in_edges(std::uint32_t node) const { return in_[node]; }

    std::int64_t total_in_weight(std::uint32_t node) const;
    std::int64_t in_degree(std::uint32_t node) const { return static_cast<std::int64_t>(in_[node].size()); }

    // Sorts adjacency by target index so iteration order is canonical
    // regardless of insertion order. Called by the builders; idempotent.
    void canonicalize();

    bool in_sample(std::uint32_t node) const { return in_sample_[node]; }
    void mark_in_sample(std::uint32_t node) { in_sample_[node] = true; }

private:
    std::map<std::string, std::uint32_t> index_;
    std::vector<std::string> names_;
    std::vector<bool> in_sample_;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<Edge>> in_;
    std::size_t n_edges_ = 0;
};

struct GraphBuildReport {
    std::size_t retweet_records = 0;   // records considered (after any lang filter)
    std::size_t self_loops_dropped = 0;
    std::size_t lang_filtered = 0;
};

// Builds the graph from every retweet authored by a sampled (young) user.
// When lang_filter is set, only retweet records with that lang create edges.
RetweetGraph build_graph(const Corpus& corpus, const std::set<std::string>& young_users,
                         const std::optional<std::string>& lang_filter, GraphBuildReport* report = nullptr);

struct RankEntry {
    std::string user_id;
    std::int64_t value;
};

enum class RankKind { total_retweets, distinct_retweeters };

struct InfluencerRanking {
    RankKind kind;
    std::vector<RankEntry> entries;  // descending by value, ties by user_id
};

InfluencerRanking rank_total_retweets(const RetweetGraph& graph, std::size_t top_k);
InfluencerRanking rank_distinct_retweeters(const RetweetGraph& graph, std::size_t top_k);

// edges.csv: source,target,weight (with header). in_sample sources are
// recovered from edge sources on load.
std::string edges_to_csv(const RetweetGraph& graph);
RetweetGraph parse_edges_csv(const std::string& contents, const std::string& origin);
RetweetGraph read_edges_csv(const std::string& path);

std::string ranking_to_csv(const InfluencerRanking& ranking);

} // namespace lifegraph
