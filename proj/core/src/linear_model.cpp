#include "lifegraph/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/rng.hpp"

namespace lifegraph {

using nlohmann::json;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double dot(const std::vector<double>& w, double b, const SparseVec& x) {
    double z = b;
    for (const auto& [i, v] : x) z += w[i] * v;
    return z;
}

} // namespace

double logistic_example_loss(const std::vector<double>& weights, double bias, const SparseVec& x, bool y, double l2) {
    const double z = dot(weights, bias, x);
    double loss = y ? softplus(-z) : softplus(z);
    if (l2 > 0) {
        double sq = 0;
        for (double w : weights) sq += w * w;
        loss += 0.5 * l2 * sq;
    }
    return loss;
}

void logistic_example_gradient(const std::vector<double>& weights, double bias, const SparseVec& x, bool y, double l2,
                               std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(weights.size(), 0.0);
    const double p = sigmoid(dot(weights, bias, x));
    const double g = p - (y ? 1.0 : 0.0);
    for (const auto& [i, v] : x) grad_w[i] += g * v;
    if (l2 > 0) {
        for (std::size_t i = 0; i < weights.size(); ++i) grad_w[i] += l2 * weights[i];
    }
    grad_b = g;
}

SparseVec LinearModel::vectorize(const FeatureVector& features) const {
    SparseVec x;
    x.reserve(features.size());
    for (const auto& [feat, value] : features) {
        auto it = vocabulary.find(feat);
        if (it != vocabulary.end()) x.emplace_back(it->second, value);
    }
    // FeatureVector iterates in key order but vocabulary indices are assigned
    // in key order too, so x is already sorted by index.
    return x;
}

double LinearModel::score_features(const FeatureVector& features) const {
    return sigmoid(dot(weights, bias, vectorize(features)));
}

double LinearModel::score_text(const std::string& text, const std::vector<ClusterLexicon>& lexicons) const {
    return score_features(extract_features(text, lexicons));
}

TweetPrediction LinearModel::predict(const std::string& tweet_id, const std::string& text,
                                     const std::vector<ClusterLexicon>& lexicons) const {
    const double score = score_text(text, lexicons);
    return {tweet_id, score >= 0.5 ? positive_label : negative_label, score};
}

LinearModel train(const std::vector<LabeledExample>& examples, const TrainConfig& config,
                  const std::vector<ClusterLexicon>& lexicons) {
    if (config.epochs < 1) throw UsageError("epochs must be >= 1");
    if (config.learning_rate <= 0) throw UsageError("learning rate must be positive");
    if (config.l2 < 0) throw UsageError("l2 strength must be non-negative");
    if (config.learning_rate * config.l2 >= 1.0) throw UsageError("learning_rate * l2 must be < 1");
    if (examples.empty()) throw DataError("empty training set");

    LinearModel model;
    model.config = config;
    for (const auto& ex : examples) {
        (is_positive_label(ex.label) ? model.positive_label : model.negative_label) = ex.label;
    }
    if (model.positive_label.empty() || model.negative_label.empty()) {
        throw DataError("training set must contain both classes");
    }

    std::vector<FeatureVector> featurized(examples.size());
    std::vector<bool> targets(examples.size());
    std::unordered_map<std::string, std::size_t> doc_freq;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        featurized[i] = extract_features(examples[i].text, lexicons);
        targets[i] = is_positive_label(examples[i].label);
        for (const auto& [feat, _] : featurized[i]) ++doc_freq[feat];
    }

    // Vocabulary indices follow feature-string order; the std::map makes the
    // assignment independent of example order.
    for (std::size_t i = 0; i < examples.size(); ++i) {
        for (const auto& [feat, _] : featurized[i]) {
            if (doc_freq.at(feat) >= config.min_feature_frequency) model.vocabulary.emplace(feat, 0);
        }
    }
    std::size_t next_index = 0;
    for (auto& [feat, idx] : model.vocabulary) idx = next_index++;
    model.weights.assign(model.vocabulary.size(), 0.0);
    model.bias = 0.0;

    std::vector<SparseVec> vectors(examples.size());
    for (std::size_t i = 0; i < examples.size(); ++i) vectors[i] = model.vectorize(featurized[i]);
    featurized.clear();

    // SGD with lazily applied L2 decay: logdecay[t] = sum_{s<=t} log(1 - lr_s*l2),
    // so the factor covering steps (u, t] is exp(logdecay[t] - logdecay[u]).
    std::vector<double>& w = model.weights;
    std::vector<std::size_t> last_update(w.size(), 0);
    std::vector<double> logdecay{0.0};
    const bool reg = config.l2 > 0;

    std::vector<std::size_t> order(examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(config.seed);

    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t oi : order) {
            ++t;
            const double lr = config.learning_rate / std::sqrt(static_cast<double>(t));
            if (reg) logdecay.push_back(logdecay.back() + std::log1p(-lr * config.l2));

            const SparseVec& x = vectors[oi];
            if (reg) {
                for (const auto& [i, v] : x) {
                    w[i] *= std::exp(logdecay[t - 1] - logdecay[last_update[i]]);
                    last_update[i] = t;
                }
            }
            double z = model.bias;
            for (const auto& [i, v] : x) z += w[i] * v;
            const double g = sigmoid(z) - (targets[oi] ? 1.0 : 0.0);
            if (reg) {
                for (const auto& [i, v] : x) w[i] = w[i] * (1.0 - lr * config.l2) - lr * g * v;
            } else {
                for (const auto& [i, v] : x) w[i] -= lr * g * v;
            }
            model.bias -= lr * g;
        }
    }
    if (reg) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] *= std::exp(logdecay[t] - logdecay[last_update[i]]);
        }
    }
    return model;
}

Metrics evaluate(const LinearModel& model, const std::vector<LabeledExample>& examples,
                 const std::vector<ClusterLexicon>& lexicons) {
    if (examples.empty()) throw DataError("cannot evaluate an empty split");
    std::vector<bool> gold, predicted;
    gold.reserve(examples.size());
    predicted.reserve(examples.size());
    for (const auto& ex : examples) {
        gold.push_back(is_positive_label(ex.label));
        predicted.push_back(model.score_text(ex.text, lexicons) >= 0.5);
    }
    return binary_metrics(gold, predicted);
}

std::string LinearModel::to_json() const {
    json j;
    j["format_version"] = 1;
    j["config"] = {{"learning_rate", config.learning_rate},
                   {"epochs", config.epochs},
                   {"l2", config.l2},
                   {"min_feature_frequency", config.min_feature_frequency},
                   {"seed", config.seed}};
    j["labels"] = {{"positive", positive_label}, {"negative", negative_label}};
    json vocab = json::object();
    for (const auto& [feat, idx] : vocabulary) vocab[feat] = idx;
    j["vocabulary"] = vocab;
    j["weights"] = weights;
    j["bias"] = bias;
    return j.dump(2) + "\n";
}

LinearModel LinearModel::from_json(const std::string& contents) {
    json j;
    try {
        j = json::parse(contents);
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed model JSON: ") + e.what());
    }
    LinearModel m;
    try {
        if (j.at("format_version").get<int>() != 1) throw DataError("unsupported model format_version");
        const auto& c = j.at("config");
        m.config.learning_rate = c.at("learning_rate").get<double>();
        m.config.epochs = c.at("epochs").get<std::size_t>();
        m.config.l2 = c.at("l2").get<double>();
        m.config.min_feature_frequency = c.at("min_feature_frequency").get<std::size_t>();
        m.config.seed = c.at("seed").get<std::uint64_t>();
        m.positive_label = j.at("labels").at("positive").get<std::string>();
        m.negative_label = j.at("labels").at("negative").get<std::string>();
        for (const auto& [feat, idx] : j.at("vocabulary").items()) {
            m.vocabulary[feat] = idx.get<std::size_t>();
        }
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
    } catch (const json::exception& e) {
        throw DataError(std::string("bad model JSON: ") + e.what());
    }
    if (m.weights.size() != m.vocabulary.size()) {
        throw DataError("model weights/vocabulary size mismatch");
    }
    for (double w : m.weights) {
        if (!std::isfinite(w)) throw DataError("non-finite weight in model");
    }
    if (!std::isfinite(m.bias)) throw DataError("non-finite bias in model");
    return m;
}

void LinearModel::save(const std::string& path) const { write_file(path, to_json()); }

LinearModel LinearModel::load(const std::string& path) { return from_json(read_file(path)); }

} // namespace lifegraph
