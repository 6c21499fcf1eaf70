#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lifegraph/rng.hpp"

namespace lifegraph {

struct SgnsConfig {
    std::size_t dimensions = 128;
    std::size_t window = 10;
    std::size_t negatives = 5;
    std::size_t epochs = 5;
    double learning_rate = 0.025;  // linear decay to learning_rate * 1e-4
    std::uint64_t seed = 1;
    std::size_t threads = 1;       // >1 enables lock-free (nondeterministic) updates

    void validate() const;
};

// Dense node embeddings, row per node index. Nodes that never occur in a
// walk have no row (has_vector(node) == false).
struct EmbeddingMatrix {
    std::size_t dimensions = 0;
    std::vector<std::int64_t> row_of_node;  // -1 when the node is unembedded
    std::vector<std::uint32_t> node_of_row;
    std::vector<double> data;               // rows * dimensions

    bool has_vector(std::uint32_t node) const {
        return node < row_of_node.size() && row_of_node[node] >= 0;
    }
    const double* vector(std::uint32_t node) const {
        return data.data() + static_cast<std::size_t>(row_of_node[node]) * dimensions;
    }
    std::size_t n_rows() const { return node_of_row.size(); }
};

// Skip-gram with negative sampling over walk corpora. Negatives are drawn
// from the walk unigram distribution raised to 3/4. Single-threaded mode is
// bit-deterministic per (walks, config); threads > 1 trades that for speed.
EmbeddingMatrix train_sgns(const std::vector<std::vector<std::uint32_t>>& walks, const SgnsConfig& config);

// Loss and analytic gradient of one (target, context, negatives) update:
//   l = -log sig(c.t) - sum_n log sig(-n.t)
// grad vectors are laid out as [target | context | negatives...]. Exposed for
// finite-difference checks.
double sgns_pair_loss(const std::vector<double>& target, const std::vector<double>& context,
                      const std::vector<std::vector<double>>& negatives);
std::vector<double> sgns_pair_gradient(const std::vector<double>& target, const std::vector<double>& context,
                                       const std::vector<std::vector<double>>& negatives);

// embeddings file: header "n dims", then "node_id v0 v1 ..." per row,
// sorted by node id.
std::string embeddings_to_text(const EmbeddingMatrix& embeddings,
                               const std::vector<std::string>& node_names);

struct NamedEmbeddings {
    std::size_t dimensions = 0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> vectors;
};

NamedEmbeddings parse_embeddings_text(const std::string& contents, const std::string& origin);
NamedEmbeddings read_embeddings_text(const std::string& path);

} // namespace lifegraph
