#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lifegraph/retweet_graph.hpp"
#include "lifegraph/sgns.hpp"

namespace lifegraph {

struct KMeansConfig {
    std::size_t k = 4;
    std::uint64_t seed = 1;
    std::size_t max_iterations = 300;
    std::size_t restarts = 4;  // k-means++ restarts, best WCSS wins
};

struct CommunityAssignment {
    std::size_t k = 0;
    std::map<std::string, std::size_t> community_of;  // node name -> 0..k-1
    std::vector<double> shares;                       // per community, sums to 1
    double wcss = 0.0;
};

// Lloyd's algorithm on L2-normalized vectors with k-means++ seeding. Runs to
// an assignment fixpoint or max_iterations; an emptied cluster is repaired by
// stealing the point farthest from the centroid of the largest cluster.
// Exactly k non-empty communities whenever names.size() >= k.
CommunityAssignment kmeans_communities(const std::vector<std::string>& names,
                                       const std::vector<std::vector<double>>& vectors, const KMeansConfig& config);

CommunityAssignment kmeans_communities(const NamedEmbeddings& embeddings, const KMeansConfig& config);

struct CommunityMember {
    std::string user_id;
    std::int64_t total_retweets;
};

struct CommunityReport {
    std::size_t community = 0;
    std::size_t size = 0;
    double share = 0.0;
    std::vector<CommunityMember> top_members;  // by total retweets within the whole graph
};

// Per-community share and the top_n members ranked by total in-weight.
// Assignment entries missing from the graph are ignored; graph nodes missing
// from the assignment raise DataError.
std::vector<CommunityReport> characterize_communities(const CommunityAssignment& assignment,
                                                      const RetweetGraph& graph, std::size_t top_n);

// communities.csv: user_id,community (with header).
std::string communities_to_csv(const CommunityAssignment& assignment);
CommunityAssignment parse_communities_csv(const std::string& contents, const std::string& origin);
CommunityAssignment read_communities_csv(const std::string& path);

} // namespace lifegraph
