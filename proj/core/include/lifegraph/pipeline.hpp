#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lifegraph/communities.hpp"
#include "lifegraph/corpus.hpp"
#include "lifegraph/forceatlas2.hpp"
#include "lifegraph/lifestage.hpp"
#include "lifegraph/linear_model.hpp"
#include "lifegraph/node2vec.hpp"
#include "lifegraph/retweet_graph.hpp"
#include "lifegraph/sgns.hpp"
#include "lifegraph/svg.hpp"

namespace lifegraph {

// End-to-end configuration. Module seeds are derived from the global seed,
// one stable stream per stage.
struct PipelineConfig {
    std::string corpus_path;
    std::string out_dir;

    // Per-tweet young/adult predictions can be supplied directly (the
    // external-predictions path standing in for a transformer classifier)...
    std::string lifestage_predictions_path;
    // ...or produced in-process: style (informal/formal) predictions seed the
    // ranking, from a TSV or from a classifier trained on a labeled seed file.
    std::string style_predictions_path;
    std::string style_seed_data_path;

    std::vector<std::string> lexicon_paths;

    std::uint64_t seed = 42;
    double basque_min_fraction = 0.20;
    std::size_t n_per_class = 500;
    std::size_t per_user = 100;
    std::array<double, 3> split_ratios{0.6, 0.2, 0.2};
    std::optional<std::string> graph_lang_filter = std::string("eu");
    std::size_t rank_top_k = 15;
    std::size_t community_top_n = 10;

    TrainConfig classifier;
    ThresholdConfig thresholds;
    WalkConfig walk;
    SgnsConfig sgns;
    KMeansConfig kmeans;
    LayoutConfig layout;
    SvgOptions svg;

    std::uint64_t stage_seed(std::string_view stage) const;
    std::string canonical_json() const;  // for the config hash
};

struct AnalysisReport {
    std::string config_hash;
    CorpusStats corpus;
    std::size_t study_users = 0;  // users above the Basque threshold
    bool trained = false;
    std::size_t dataset_examples = 0;
    Metrics dev_metrics;
    Metrics test_metrics;
    LifeStageCounts lifestage;
    std::size_t graph_nodes = 0;
    std::size_t graph_edges = 0;
    std::int64_t graph_total_weight = 0;
    GraphBuildReport graph_build;
    InfluencerRanking top_total;
    InfluencerRanking top_distinct;
    std::vector<double> community_shares;
    std::vector<CommunityReport> community_reports;
    std::size_t unembedded_nodes = 0;

    std::string to_json() const;
};

// Runs ingest -> (dataset build + train | external predictions) -> aggregate
// -> graph -> rank -> embed -> communities -> layout -> GEXF/SVG export,
// writing every stage artifact under config.out_dir. The first failing stage
// aborts with its name and cause.
AnalysisReport run_pipeline(const PipelineConfig& config);

// Deterministic nearest-by-name community for nodes without an embedding.
std::size_t nearest_by_name_community(const CommunityAssignment& assignment, const std::string& name);

} // namespace lifegraph
