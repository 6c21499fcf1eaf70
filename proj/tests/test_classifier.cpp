#include "doctest.h"

#include <cmath>

#include "lifegraph/errors.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/linear_model.hpp"
#include "lifegraph/rng.hpp"

using namespace lifegraph;

TEST_CASE("extract_features covers the feature families") {
    const FeatureVector fv = extract_features("jajaja kaixo");
    CHECK(fv.count("w=jajaja") == 1);
    CHECK(fv.count("w=kaixo") == 1);
    CHECK(fv.count("w2=jajaja kaixo") == 1);
    CHECK(fv.count("sh:elong") == 1);  // letters repeated >= 3 times in a token
    CHECK(fv.count("c3=jaj") == 1);
    CHECK(fv.count("c3=kai") == 1);
    CHECK(fv.count("c3=ixo") == 1);
    CHECK(fv.count("p2=ja") == 1);
    CHECK(fv.count("s2=xo") == 1);
    CHECK(fv.at("w=kaixo") == 1.0);

    CHECK(extract_features("").empty());
    CHECK(extract_features("kaixo").count("sh:elong") == 0);
    CHECK(extract_features("KAIXO").count("sh:caps") == 1);
    CHECK(extract_features("abc123").count("sh:digit") == 1);
}

TEST_CASE("extract_features includes cluster lookups") {
    ClusterLexicon lex;
    lex.clusters["kaixo"] = "0110";
    const FeatureVector fv = extract_features("kaixo", {lex});
    CHECK(fv.count("clus:0110") == 1);
    CHECK(extract_features("agur", {lex}).count("clus:0110") == 0);

    ClusterLexicon named;
    named.name = "brown";
    named.clusters["kaixo"] = "0110";
    CHECK(extract_features("kaixo", {named}).count("clus:brown:0110") == 1);
}

TEST_CASE("punctuation density is the only real-valued feature") {
    const FeatureVector fv = extract_features("kaixo !!");
    REQUIRE(fv.count("punct_density") == 1);
    CHECK(fv.at("punct_density") == doctest::Approx(2.0 / 7.0));
    for (const auto& [feat, value] : fv) {
        if (feat != "punct_density") CHECK(value == 1.0);
    }
}

TEST_CASE("feature extraction is pure") {
    ClusterLexicon lex;
    lex.clusters["kaixo"] = "01";
    const auto a = extract_features("kaixo jajaja lagun!", {lex});
    const auto b = extract_features("kaixo jajaja lagun!", {lex});
    CHECK(a == b);
}

TEST_CASE("lexicon parsing validates its format") {
    const auto lex = parse_lexicon_tsv("kaixo\t0110\nagur\t0111\n", "test", "brown");
    CHECK(lex.clusters.size() == 2);
    CHECK(lex.name == "brown");
    CHECK_THROWS_AS(parse_lexicon_tsv("kaixo\t01\nkaixo\t10\n", "test", ""), DataError);
    CHECK_THROWS_AS(parse_lexicon_tsv("kaixo 01\n", "test", ""), DataError);
}

namespace {

// Linearly separable two-style set; any consistent learner must fit it.
std::vector<LabeledExample> separable_set() {
    std::vector<LabeledExample> examples;
    const char* informal[] = {"jajaja tope", "holaaa lagun", "buaaa zelako", "jejeje ondo"};
    const char* formal[] = {"bilera agenda", "proiektua txostena", "ekonomia batzordea", "hezkuntza araudia"};
    for (int rep = 0; rep < 4; ++rep) {
        for (const char* t : informal) examples.push_back({t, "young", "uy" + std::to_string(rep), ""});
        for (const char* t : formal) examples.push_back({t, "adult", "ua" + std::to_string(rep), ""});
    }
    return examples;
}

} // namespace

TEST_CASE("train fits a separable set to accuracy 1.0") {
    TrainConfig config;
    config.min_feature_frequency = 1;
    const auto examples = separable_set();
    const LinearModel model = train(examples, config);
    const Metrics m = evaluate(model, examples);
    CHECK(m.accuracy == 1.0);

    for (const auto& ex : examples) {
        const auto pred = model.predict("id", ex.text);
        CHECK(pred.label == ex.label);
    }
}

TEST_CASE("training twice with the same seed is byte-identical") {
    TrainConfig config;
    config.min_feature_frequency = 1;
    const LinearModel a = train(separable_set(), config);
    const LinearModel b = train(separable_set(), config);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("train validates its config and inputs") {
    TrainConfig config;
    config.epochs = 0;
    CHECK_THROWS_AS(train(separable_set(), config), UsageError);

    TrainConfig ok;
    std::vector<LabeledExample> single{{"kaixo", "young", "u", ""}, {"agur", "young", "v", ""}};
    CHECK_THROWS_AS(train(single, ok), DataError);
    CHECK_THROWS_AS(train({}, ok), DataError);
}

TEST_CASE("predict: empty text scores sigmoid(bias), scores stay in (0,1)") {
    TrainConfig config;
    config.min_feature_frequency = 1;
    const LinearModel model = train(separable_set(), config);

    CHECK(model.score_text("") == doctest::Approx(sigmoid(model.bias)));
    for (const char* t : {"zer moduz", "jajaja", "bilera", "", "x y z"}) {
        const double s = model.score_text(t);
        CHECK(s > 0.0);
        CHECK(s < 1.0);
    }
    // argmax consistency
    for (const char* t : {"jajaja lagun", "agenda bilera", "kaixo"} ) {
        const auto p = model.predict("id", t);
        CHECK((p.score >= 0.5) == (p.label == model.positive_label));
    }
}

TEST_CASE("min feature frequency prunes the vocabulary") {
    std::vector<LabeledExample> examples;
    for (int i = 0; i < 6; ++i) examples.push_back({"jajaja ezohiko" + std::to_string(i), "young", "u", ""});
    for (int i = 0; i < 6; ++i) examples.push_back({"bilera", "adult", "v", ""});
    TrainConfig config;
    config.min_feature_frequency = 2;
    const LinearModel model = train(examples, config);
    CHECK(model.vocabulary.count("w=jajaja") == 1);
    CHECK(model.vocabulary.count("w=ezohiko0") == 0);  // appears once
}

TEST_CASE("model json round-trips") {
    TrainConfig config;
    config.min_feature_frequency = 1;
    const LinearModel model = train(separable_set(), config);
    const LinearModel back = LinearModel::from_json(model.to_json());
    CHECK(back.to_json() == model.to_json());
    CHECK(back.score_text("jajaja") == doctest::Approx(model.score_text("jajaja")));

    CHECK_THROWS_AS(LinearModel::from_json("{"), DataError);
    CHECK_THROWS_AS(LinearModel::from_json("{\"format_version\":1}"), DataError);
}

TEST_CASE("logistic gradient matches finite differences") {
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 1 + rng.next_below(6);
        std::vector<double> w(dim);
        for (auto& x : w) x = rng.next_double(-1.5, 1.5);
        double bias = rng.next_double(-1, 1);
        SparseVec x;
        for (std::size_t i = 0; i < dim; ++i) {
            if (rng.next_double() < 0.7) x.emplace_back(i, rng.next_double(-2, 2));
        }
        const bool y = rng.next_double() < 0.5;
        const double l2 = rng.next_double() < 0.5 ? 0.0 : 0.01;

        std::vector<double> grad;
        double grad_b = 0;
        logistic_example_gradient(w, bias, x, y, l2, grad, grad_b);

        const double eps = 1e-6;
        for (std::size_t i = 0; i < dim; ++i) {
            auto wp = w, wm = w;
            wp[i] += eps;
            wm[i] -= eps;
            const double fd =
                (logistic_example_loss(wp, bias, x, y, l2) - logistic_example_loss(wm, bias, x, y, l2)) / (2 * eps);
            CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-4));
        }
        const double fd_b =
            (logistic_example_loss(w, bias + eps, x, y, l2) - logistic_example_loss(w, bias - eps, x, y, l2)) /
            (2 * eps);
        CHECK(grad_b == doctest::Approx(fd_b).epsilon(1e-4));
    }
}

TEST_CASE("stronger L2 never increases the weight norm") {
    std::vector<LabeledExample> examples = separable_set();
    double prev_norm = 1e300;
    for (double l2 : {0.0, 1e-4, 1e-2, 1e-1}) {
        TrainConfig config;
        config.min_feature_frequency = 1;
        config.l2 = l2;
        const LinearModel model = train(examples, config);
        double norm = 0;
        for (double w : model.weights) norm += w * w;
        norm = std::sqrt(norm);
        CHECK(norm <= prev_norm + 1e-12);
        prev_norm = norm;
    }
}

TEST_CASE("evaluate implements the binary metric definitions") {
    TrainConfig config;
    config.min_feature_frequency = 1;
    const auto examples = separable_set();
    const LinearModel model = train(examples, config);

    const Metrics perfect = evaluate(model, examples);
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);

    CHECK_THROWS_AS(evaluate(model, {}), DataError);
}

TEST_CASE("binary metrics: constant-positive predictor on a balanced set") {
    std::vector<bool> gold, predicted;
    for (int i = 0; i < 100; ++i) {
        gold.push_back(i < 50);
        predicted.push_back(true);
    }
    const Metrics m = binary_metrics(gold, predicted);
    CHECK(m.accuracy == doctest::Approx(0.5));
    CHECK(m.recall == doctest::Approx(1.0));
    CHECK(m.precision == doctest::Approx(0.5));
    CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("binary metrics: zero true positives fall back to zeros") {
    std::vector<bool> gold{true, true, false};
    std::vector<bool> predicted{false, false, false};
    const Metrics m = binary_metrics(gold, predicted);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK(m.accuracy == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("random predictions on a balanced set converge to accuracy 0.5") {
    Rng rng(31337);
    std::vector<bool> gold, predicted;
    for (int i = 0; i < 10000; ++i) {
        gold.push_back(i % 2 == 0);
        predicted.push_back(rng.next_double() < 0.5);
    }
    const Metrics m = binary_metrics(gold, predicted);
    CHECK(m.accuracy == doctest::Approx(0.5).epsilon(0.04));
}
