#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lifegraph/dataset.hpp"

namespace lifegraph {

enum class LifeStage { young, adult, underdetermined };

const char* to_string(LifeStage stage);
LifeStage lifestage_from_string(const std::string& s);

struct ThresholdConfig {
    double upper = 0.60;
    double lower = 0.40;
    // When true, aggregate the mean predicted probability instead of the
    // fraction of discrete young labels.
    bool use_mean_probability = false;

    void validate() const;
};

struct UserLifeStage {
    std::string user_id;
    double young_fraction = 0.0;
    LifeStage label = LifeStage::underdetermined;
    std::size_t n_tweets = 0;
};

// fraction > upper -> young; fraction < lower -> adult; the closed interval
// [lower, upper] is underdetermined.
LifeStage label_for_fraction(double fraction, const ThresholdConfig& thresholds);

UserLifeStage classify_user(const std::string& user_id, const std::vector<TweetPrediction>& predictions,
                            const ThresholdConfig& thresholds);

struct LifeStageCounts {
    std::size_t young = 0;
    std::size_t adult = 0;
    std::size_t underdetermined = 0;

    std::size_t total() const { return young + adult + underdetermined; }
};

struct CorpusLifeStages {
    std::vector<UserLifeStage> users;  // sorted by user_id
    LifeStageCounts counts;
};

CorpusLifeStages classify_corpus(const PredictionsByUser& predictions, const ThresholdConfig& thresholds);

// 3x3 transition counts between two labelings of the same user set,
// indexed [old][new] in (young, adult, underdetermined) order.
struct TransitionMatrix {
    std::array<std::array<std::size_t, 3>, 3> counts{};

    std::size_t total() const;
    std::size_t changed() const;
    double changed_fraction() const;
    std::array<std::size_t, 3> row_sums() const;
    std::array<std::size_t, 3> col_sums() const;
};

TransitionMatrix compare_methods(const std::map<std::string, LifeStage>& labels_old,
                                 const std::map<std::string, LifeStage>& labels_new);

// lifestages.csv: user_id,young_fraction,n_tweets,label (with header).
std::string lifestages_to_csv(const CorpusLifeStages& stages);
CorpusLifeStages parse_lifestages_csv(const std::string& contents, const std::string& origin);
CorpusLifeStages read_lifestages_csv(const std::string& path);

std::string transitions_to_csv(const TransitionMatrix& m);

} // namespace lifegraph
