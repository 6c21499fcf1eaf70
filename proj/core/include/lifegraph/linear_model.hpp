#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lifegraph/dataset.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/metrics.hpp"

namespace lifegraph {

struct TrainConfig {
    double learning_rate = 0.1;        // step t uses learning_rate / sqrt(t)
    std::size_t epochs = 10;
    double l2 = 1e-5;
    std::size_t min_feature_frequency = 2;  // document frequency cutoff
    std::uint64_t seed = 42;
};

// (feature index, value) pairs, indices strictly increasing.
using SparseVec = std::vector<std::pair<std::size_t, double>>;

// L2-regularized logistic regression trained by SGD. Training is
// single-threaded and bit-deterministic for a fixed (dataset, config);
// a trained model is immutable and safe to share across prediction threads.
class LinearModel {
public:
    TrainConfig config;
    std::string positive_label;
    std::string negative_label;
    std::map<std::string, std::size_t> vocabulary;
    std::vector<double> weights;
    double bias = 0.0;

    SparseVec vectorize(const FeatureVector& features) const;
    double score_features(const FeatureVector& features) const;  // sigmoid(w.x + b)
    double score_text(const std::string& text, const std::vector<ClusterLexicon>& lexicons = {}) const;
    TweetPrediction predict(const std::string& tweet_id, const std::string& text,
                            const std::vector<ClusterLexicon>& lexicons = {}) const;

    std::string to_json() const;
    static LinearModel from_json(const std::string& contents);
    void save(const std::string& path) const;
    static LinearModel load(const std::string& path);
};

LinearModel train(const std::vector<LabeledExample>& examples, const TrainConfig& config,
                  const std::vector<ClusterLexicon>& lexicons = {});

// Metrics for the positive (young) class over any example list.
Metrics evaluate(const LinearModel& model, const std::vector<LabeledExample>& examples,
                 const std::vector<ClusterLexicon>& lexicons = {});

// Per-example regularized loss l(w,b) = logloss + l2/2 * |w|^2 and its exact
// gradient; these are the quantities the SGD loop steps along, exposed so the
// analytic gradient can be checked against finite differences.
double logistic_example_loss(const std::vector<double>& weights, double bias, const SparseVec& x, bool y, double l2);
void logistic_example_gradient(const std::vector<double>& weights, double bias, const SparseVec& x, bool y, double l2,
                               std::vector<double>& grad_w, double& grad_b);

double sigmoid(double z);

} // namespace lifegraph
