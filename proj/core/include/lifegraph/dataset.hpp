#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lifegraph/corpus.hpp"

namespace lifegraph {

// Per-tweet classifier output. `label` is one of young/adult (life stage) or
// informal/formal (style); score is the probability of the positive class
// (young resp. informal).
struct TweetPrediction {
    std::string tweet_id;
    std::string label;
    double score = 0.5;
};

// young and informal are the positive classes throughout.
bool is_positive_label(const std::string& label);
void validate_label(const std::string& label);

using PredictionsByUser = std::map<std::string, std::vector<TweetPrediction>>;

struct UserRankEntry {
    std::string user_id;
    double informal_fraction = 0.0;
    std::size_t n_tweets = 0;
};

struct LabeledExample {
    std::string text;
    std::string label;
    std::string user_id;
    std::string split;  // train/dev/test, empty before splitting
};

struct LabeledDataset {
    std::vector<LabeledExample> examples;

    std::vector<LabeledExample> with_split(const std::string& split) const;
    std::map<std::string, std::size_t> label_counts() const;
};

// predictions.tsv: tweet_id <TAB> label <TAB> score, no header.
std::vector<TweetPrediction> read_predictions_tsv(const std::string& path);
std::vector<TweetPrediction> parse_predictions_tsv(const std::string& contents, const std::string& origin);
std::string predictions_to_tsv(const std::vector<TweetPrediction>& predictions);

// Joins per-tweet predictions back onto corpus authorship. Predictions whose
// tweet_id is not in the corpus raise DataError.
PredictionsByUser group_predictions_by_user(const Corpus& corpus, const std::vector<TweetPrediction>& predictions);

// Descending by positive-class fraction, ties broken by user_id ascending.
std::vector<UserRankEntry> rank_users(const PredictionsByUser& predictions);

struct ExtremeSelection {
    std::set<std::string> young;  // top of the ranking (most informal)
    std::set<std::string> adult;  // bottom of the ranking
};

ExtremeSelection select_extremes(const std::vector<UserRankEntry>& ranking, std::size_t n_per_class = 500);

// Samples min(per_user, |timeline|) tweets per user without replacement.
// The per-user RNG stream is derived from (seed, user_id), so the result is
// independent of map iteration order and stable across runs.
LabeledDataset sample_tweets(const Corpus& corpus, const std::map<std::string, std::string>& user_labels,
                             std::size_t per_user, std::uint64_t seed);

// User-level split: every example of a user lands in the same split, class
// balance within each split held to +-1 user per class.
void split_dataset(LabeledDataset& dataset, std::array<double, 3> ratios, std::uint64_t seed);

// dataset file: JSONL of {text, label, user_id, split}.
std::string dataset_to_jsonl(const LabeledDataset& dataset);
LabeledDataset read_dataset_jsonl(const std::string& path);
LabeledDataset parse_dataset_jsonl(const std::string& contents, const std::string& origin);

} // namespace lifegraph
