#include "lifegraph/pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "lifegraph/dataset.hpp"
#include "lifegraph/errors.hpp"
#include "lifegraph/gexf.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/rng.hpp"
#include "lifegraph/text.hpp"

namespace lifegraph {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t PipelineConfig::stage_seed(std::string_view stage) const {
    std::uint64_t sm = seed ^ fnv1a64(stage);
    return splitmix64(sm);
}

std::string PipelineConfig::canonical_json() const {
    json j;
    j["corpus"] = corpus_path;
    j["lifestage_predictions"] = lifestage_predictions_path;
    j["style_predictions"] = style_predictions_path;
    j["style_seed_data"] = style_seed_data_path;
    j["lexicons"] = lexicon_paths;
    j["seed"] = seed;
    j["basque_min_fraction"] = basque_min_fraction;
    j["n_per_class"] = n_per_class;
    j["per_user"] = per_user;
    j["split_ratios"] = split_ratios;
    j["graph_lang_filter"] = graph_lang_filter ? json(*graph_lang_filter) : json(nullptr);
    j["rank_top_k"] = rank_top_k;
    j["community_top_n"] = community_top_n;
    j["classifier"] = {{"learning_rate", classifier.learning_rate},
                       {"epochs", classifier.epochs},
                       {"l2", classifier.l2},
                       {"min_feature_frequency", classifier.min_feature_frequency}};
    j["thresholds"] = {{"upper", thresholds.upper},
                       {"lower", thresholds.lower},
                       {"mean_probability", thresholds.use_mean_probability}};
    j["walk"] = {{"p", walk.p},
                 {"q", walk.q},
                 {"walk_length", walk.walk_length},
                 {"walks_per_node", walk.walks_per_node},
                 {"directed", walk.directed}};
    j["sgns"] = {{"dimensions", sgns.dimensions},
                 {"window", sgns.window},
                 {"negatives", sgns.negatives},
                 {"epochs", sgns.epochs},
                 {"learning_rate", sgns.learning_rate},
                 {"threads", sgns.threads}};
    j["kmeans"] = {{"k", kmeans.k}, {"restarts", kmeans.restarts}};
    j["layout"] = {{"iterations", layout.iterations},
                   {"scaling", layout.scaling},
                   {"gravity", layout.gravity},
                   {"linlog", layout.use_linlog},
                   {"barnes_hut", layout.barnes_hut},
                   {"theta", layout.theta},
                   {"edge_weight_influence", layout.edge_weight_influence}};
    return j.dump();
}

std::size_t nearest_by_name_community(const CommunityAssignment& assignment, const std::string& name) {
    if (assignment.community_of.empty()) throw DataError("no communities to assign from");
    auto it = assignment.community_of.lower_bound(name);
    if (it == assignment.community_of.end()) return std::prev(it)->second;
    return it->second;
}

namespace {

[[noreturn]] void stage_fail(const char* stage, const std::string& cause) {
    throw DataError(std::string("stage '") + stage + "' failed: " + cause);
}

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const IoError& e) {
        throw IoError(std::string("stage '") + stage + "' failed: " + e.what());
    } catch (const UsageError& e) {
        throw UsageError(std::string("stage '") + stage + "' failed: " + e.what());
    } catch (const std::exception& e) {
        stage_fail(stage, e.what());
    }
}

json metrics_json(const Metrics& m) {
    return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"n", m.n}};
}

json ranking_json(const InfluencerRanking& r) {
    json arr = json::array();
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        arr.push_back({{"rank", i + 1}, {"user_id", r.entries[i].user_id}, {"value", r.entries[i].value}});
    }
    return arr;
}

} // namespace

std::string AnalysisReport::to_json() const {
    json j;
    j["config_hash"] = config_hash;
    j["corpus"] = {{"n_users", corpus.n_users}, {"n_tweets", corpus.n_tweets}, {"n_retweets", corpus.n_retweets}};
    json langs = json::object();
    for (const auto& [lang, count] : corpus.per_lang) langs[lang] = count;
    j["corpus"]["per_lang"] = langs;
    j["study_users"] = study_users;
    j["classifier"] = json::object();
    j["classifier"]["trained"] = trained;
    if (trained) {
        j["classifier"]["dataset_examples"] = dataset_examples;
        j["classifier"]["dev"] = metrics_json(dev_metrics);
        j["classifier"]["test"] = metrics_json(test_metrics);
    }
    j["lifestage"] = {{"young", lifestage.young},
                      {"adult", lifestage.adult},
                      {"underdetermined", lifestage.underdetermined},
                      {"total", lifestage.total()}};
    j["graph"] = {{"nodes", graph_nodes},
                  {"edges", graph_edges},
                  {"total_weight", graph_total_weight},
                  {"retweet_records", graph_build.retweet_records},
                  {"self_loops_dropped", graph_build.self_loops_dropped},
                  {"lang_filtered", graph_build.lang_filtered}};
    j["rankings"] = {{"total_retweets", ranking_json(top_total)}, {"distinct_retweeters", ranking_json(top_distinct)}};
    j["communities"] = json::array();
    for (const auto& report : community_reports) {
        json members = json::array();
        for (const auto& m : report.top_members) {
            members.push_back({{"user_id", m.user_id}, {"total_retweets", m.total_retweets}});
        }
        j["communities"].push_back(
            {{"community", report.community}, {"size", report.size}, {"share", report.share}, {"top", members}});
    }
    j["unembedded_nodes"] = unembedded_nodes;
    return j.dump(2) + "\n";
}

AnalysisReport run_pipeline(const PipelineConfig& config) {
    AnalysisReport report;
    {
        std::uint64_t h = fnv1a64(config.canonical_json());
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        report.config_hash = buf;
    }

    if (config.corpus_path.empty()) stage_fail("ingest", "missing input: corpus path");
    if (config.out_dir.empty()) stage_fail("ingest", "missing output directory");
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.out_dir + ": " + ec.message());
    const auto out = [&](const std::string& name) { return (fs::path(config.out_dir) / name).string(); };

    // ingest
    const Corpus corpus = run_stage("ingest", [&] { return ingest_jsonl(config.corpus_path); });
    report.corpus = corpus.stats();
    write_file(out("stats.json"), stats_to_json(report.corpus));

    const std::set<std::string> study = run_stage("ingest", [&] {
        return basque_users(corpus, config.basque_min_fraction);
    });
    report.study_users = study.size();

    // per-tweet young/adult predictions
    std::vector<TweetPrediction> predictions;
    if (!config.lifestage_predictions_path.empty()) {
        predictions = run_stage("predict", [&] { return read_predictions_tsv(config.lifestage_predictions_path); });
    } else {
        if (config.style_predictions_path.empty() && config.style_seed_data_path.empty()) {
            stage_fail("build-dataset",
                       "missing input: provide lifestage predictions, style predictions, or style seed data");
        }
        std::vector<ClusterLexicon> lexicons;
        for (const auto& path : config.lexicon_paths) {
            lexicons.push_back(run_stage("train", [&] { return read_lexicon_tsv(path); }));
        }

        // style predictions seed the ranking
        std::vector<TweetPrediction> style;
        if (!config.style_predictions_path.empty()) {
            style = run_stage("build-dataset", [&] { return read_predictions_tsv(config.style_predictions_path); });
        } else {
            style = run_stage("build-dataset", [&] {
                LabeledDataset seed_data = read_dataset_jsonl(config.style_seed_data_path);
                for (auto& ex : seed_data.examples) ex.text = preprocess(ex.text);
                TrainConfig style_config = config.classifier;
                style_config.seed = config.stage_seed("style-train");
                const LinearModel style_model = train(seed_data.examples, style_config, lexicons);
                std::vector<TweetPrediction> preds;
                for (const auto& [uid, tl] : corpus) {
                    if (!study.count(uid)) continue;
                    for (const auto& t : tl.tweets) {
                        preds.push_back(style_model.predict(t.tweet_id, preprocess(t.text), lexicons));
                    }
                }
                return preds;
            });
        }

        // rank by informal proportion, harvest extremes, sample, split
        LabeledDataset dataset = run_stage("build-dataset", [&] {
            PredictionsByUser by_user = group_predictions_by_user(corpus, style);
            for (auto it = by_user.begin(); it != by_user.end();) {
                it = study.count(it->first) ? std::next(it) : by_user.erase(it);
            }
            const auto ranking = rank_users(by_user);
            const auto extremes = select_extremes(ranking, config.n_per_class);
            std::map<std::string, std::string> labels;
            for (const auto& uid : extremes.young) labels[uid] = "young";
            for (const auto& uid : extremes.adult) labels[uid] = "adult";
            LabeledDataset ds = sample_tweets(corpus, labels, config.per_user, config.stage_seed("sample"));
            for (auto& ex : ds.examples) ex.text = preprocess(ex.text);
            split_dataset(ds, config.split_ratios, config.stage_seed("split"));
            return ds;
        });
        write_file(out("dataset.jsonl"), dataset_to_jsonl(dataset));
        report.dataset_examples = dataset.examples.size();

        // train + evaluate + predict the study population
        const LinearModel model = run_stage("train", [&] {
            TrainConfig train_config = config.classifier;
            train_config.seed = config.stage_seed("train");
            return train(dataset.with_split("train"), train_config, lexicons);
        });
        model.save(out("model.json"));
        report.trained = true;
        const auto dev = dataset.with_split("dev");
        const auto test = dataset.with_split("test");
        if (!dev.empty()) report.dev_metrics = run_stage("evaluate", [&] { return evaluate(model, dev, lexicons); });
        if (!test.empty()) report.test_metrics = run_stage("evaluate", [&] { return evaluate(model, test, lexicons); });

        predictions = run_stage("predict", [&] {
            std::vector<TweetPrediction> preds;
            for (const auto& [uid, tl] : corpus) {
                if (!study.count(uid)) continue;
                for (const auto& t : tl.tweets) {
                    preds.push_back(model.predict(t.tweet_id, preprocess(t.text), lexicons));
                }
            }
            return preds;
        });
    }
    write_file(out("predictions.tsv"), predictions_to_tsv(predictions));

    // aggregate per user
    const CorpusLifeStages stages = run_stage("aggregate", [&] {
        PredictionsByUser by_user = group_predictions_by_user(corpus, predictions);
        return classify_corpus(by_user, config.thresholds);
    });
    write_file(out("lifestages.csv"), lifestages_to_csv(stages));
    report.lifestage = stages.counts;

    // retweet graph of the young cohort
    std::set<std::string> young;
    for (const auto& u : stages.users) {
        if (u.label == LifeStage::young) young.insert(u.user_id);
    }
    const RetweetGraph graph = run_stage("graph", [&] {
        return build_graph(corpus, young, config.graph_lang_filter, &report.graph_build);
    });
    write_file(out("edges.csv"), edges_to_csv(graph));
    report.graph_nodes = graph.n_nodes();
    report.graph_edges = graph.n_edges();
    for (std::uint32_t i = 0; i < graph.n_nodes(); ++i) report.graph_total_weight += graph.total_in_weight(i);

    if (graph.n_nodes() == 0) {
        stage_fail("graph", "retweet graph is empty; nothing to rank, embed, or lay out");
    }

    // influencer rankings
    report.top_total = rank_total_retweets(graph, config.rank_top_k);
    report.top_distinct = rank_distinct_retweeters(graph, config.rank_top_k);
    write_file(out("ranking_total.csv"), ranking_to_csv(report.top_total));
    write_file(out("ranking_distinct.csv"), ranking_to_csv(report.top_distinct));

    // node2vec embedding
    const WalkGraph walk_graph(graph, config.walk.directed);
    const EmbeddingMatrix embeddings = run_stage("embed", [&] {
        WalkConfig wc = config.walk;
        wc.seed = config.stage_seed("walks");
        auto walks = generate_walks(walk_graph, wc);
        SgnsConfig sc = config.sgns;
        sc.seed = config.stage_seed("sgns");
        return train_sgns(walks, sc);
    });
    std::vector<std::string> node_names;
    node_names.reserve(graph.n_nodes());
    for (std::uint32_t i = 0; i < graph.n_nodes(); ++i) node_names.push_back(graph.node_name(i));
    write_file(out("embeddings.txt"), embeddings_to_text(embeddings, node_names));

    // communities, with nearest-by-name fallback for unembedded nodes
    CommunityAssignment assignment = run_stage("communities", [&] {
        const NamedEmbeddings named = read_embeddings_text(out("embeddings.txt"));
        KMeansConfig kc = config.kmeans;
        kc.seed = config.stage_seed("kmeans");
        return kmeans_communities(named, kc);
    });
    for (const auto& name : node_names) {
        if (!assignment.community_of.count(name)) {
            ++report.unembedded_nodes;
            assignment.community_of[name] = nearest_by_name_community(assignment, name);
        }
    }
    if (report.unembedded_nodes > 0) {
        assignment.shares.assign(assignment.k, 0.0);
        for (const auto& [name, c] : assignment.community_of) assignment.shares[c] += 1.0;
        for (double& s : assignment.shares) s /= static_cast<double>(assignment.community_of.size());
    }
    write_file(out("communities.csv"), communities_to_csv(assignment));
    report.community_shares = assignment.shares;
    report.community_reports = characterize_communities(assignment, graph, config.community_top_n);

    // layout
    const LayoutGraph layout_graph = LayoutGraph::from(graph);
    const std::vector<Vec2> positions = run_stage("layout", [&] {
        LayoutConfig lc = config.layout;
        lc.seed = config.stage_seed("layout");
        return layout(layout_graph, lc);
    });
    write_file(out("positions.csv"), positions_to_csv(layout_graph, positions));

    // exports
    std::map<std::string, LifeStage> lifestage_of;
    for (const auto& u : stages.users) {
        if (graph.node_index(u.user_id)) lifestage_of[u.user_id] = u.label;
    }
    std::map<std::string, Vec2> position_of = parse_positions_csv(positions_to_csv(layout_graph, positions), "positions");
    run_stage("export-gexf", [&] {
        export_gexf(graph, lifestage_of, assignment.community_of, position_of, out("graph.gexf"));
        return 0;
    });
    run_stage("render-svg", [&] {
        render_svg(graph, position_of, assignment.community_of, out("map.svg"), config.svg);
        return 0;
    });

    write_file(out("report.json"), report.to_json());
    return report;
}

} // namespace lifegraph
