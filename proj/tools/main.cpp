#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "lifegraph/communities.hpp"
#include "lifegraph/corpus.hpp"
#include "lifegraph/dataset.hpp"
#include "lifegraph/errors.hpp"
#include "lifegraph/forceatlas2.hpp"
#include "lifegraph/gexf.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/lifestage.hpp"
#include "lifegraph/linear_model.hpp"
#include "lifegraph/metrics.hpp"
#include "lifegraph/node2vec.hpp"
#include "lifegraph/pipeline.hpp"
#include "lifegraph/retweet_graph.hpp"
#include "lifegraph/sgns.hpp"
#include "lifegraph/svg.hpp"
#include "lifegraph/text.hpp"

namespace {

using namespace lifegraph;
using nlohmann::json;

// Accepts TOML (CLI11's native config dialect) and, when the file starts
// with '{', flat or sectioned JSON.
class JsonOrTomlConfig : public CLI::ConfigBase {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::string text(std::istreambuf_iterator<char>(input), {});
        std::size_t i = 0;
        while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size() || text[i] != '{') {
            std::istringstream again(text);
            return CLI::ConfigBase::from_config(again);
        }
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw CLI::FileError(std::string("config JSON: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

private:
    static void flatten(const json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                flatten(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& el : value) item.inputs.push_back(scalar(el));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }

    static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }
};

void add_config_option(CLI::App* sub) {
    // Consumed before parsing (see expand_config_args); declared here so it
    // appears in --help and is accepted by the parser.
    sub->add_option("--config", "Read options from a TOML or JSON file")->type_name("FILE");
}

// CLI11 2.x does not feed subcommand-level config files, so --config is
// expanded into ordinary argv tokens up front. Explicit command-line flags
// win over config values.
std::vector<std::string> expand_config_args(const CLI::App& app, std::vector<std::string> args) {
    std::string subcommand;
    std::size_t insert_at = 0;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (subcommand.empty() && !args[i].empty() && args[i][0] != '-') {
            subcommand = args[i];
            insert_at = i + 1;
            continue;
        }
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (subcommand.empty() || config_path.empty()) return args;
    const CLI::App* sub = nullptr;
    for (const auto* candidate : app.get_subcommands([](const CLI::App*) { return true; })) {
        if (candidate->get_name() == subcommand) sub = candidate;
    }
    if (!sub) return args;  // CLI11 reports the unknown subcommand

    std::ifstream input(config_path);
    if (!input) throw IoError("cannot open config file: " + config_path);
    const auto items = JsonOrTomlConfig{}.from_config(input);

    std::set<std::string> given;
    for (const auto& arg : args) {
        if (arg.rfind("--", 0) == 0) given.insert(arg.substr(0, arg.find('=')));
    }

    std::vector<std::string> expanded;
    for (const auto& item : items) {
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == subcommand)) continue;
        if (item.name == "config") continue;
        const std::string flag = "--" + item.name;
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        if (!opt) throw UsageError("unknown key '" + item.name + "' in config file for '" + subcommand + "'");
        if (given.count(flag)) continue;
        if (opt->get_expected_min() == 0) {
            // flag; accepts --name=true / --name=false
            expanded.push_back(flag + "=" + (item.inputs.empty() ? "true" : item.inputs.front()));
        } else {
            expanded.push_back(flag);
            for (const auto& value : item.inputs) expanded.push_back(value);
        }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), expanded.begin(), expanded.end());
    return args;
}

void write_or_print(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::fwrite(contents.data(), 1, contents.size(), stdout);
    } else {
        write_file(path, contents);
    }
}

std::vector<ClusterLexicon> load_lexicons(const std::vector<std::string>& paths) {
    std::vector<ClusterLexicon> lexicons;
    for (const auto& p : paths) lexicons.push_back(read_lexicon_tsv(p));
    return lexicons;
}

std::map<std::string, LifeStage> labels_of(const CorpusLifeStages& stages) {
    std::map<std::string, LifeStage> out;
    for (const auto& u : stages.users) out[u.user_id] = u.label;
    return out;
}

json metrics_json(const Metrics& m) {
    return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"n", m.n}};
}

struct CliState {
    // ingest
    std::string input, stats_out;
    // build-dataset
    std::string corpus, predictions, seed_data, out;
    std::vector<std::string> lexicons;
    std::size_t n_per_class = 500, per_user = 100;
    std::vector<double> ratios{0.6, 0.2, 0.2};
    std::uint64_t seed = 42;
    // train/predict/evaluate
    std::string model, data, split = "train", eval_split = "test";
    TrainConfig train_config;
    // aggregate/compare
    double upper = 0.60, lower = 0.40;
    bool mean_probability = false, originals_only = false;
    std::string old_csv, new_csv;
    // graph/rank
    std::string lifestages_csv, lang = "eu", report_out, kind = "total";
    std::size_t top = 15;
    // embed
    WalkConfig walk;
    SgnsConfig sgns;
    std::string mode = "auto";
    bool directed = false;
    // communities
    KMeansConfig kmeans;
    std::string embeddings, graph_csv;
    std::size_t community_top = 10;
    // layout
    LayoutConfig layout_config;
    bool force_exact = false, force_bh = false;
    // export/render
    std::string positions, communities_csv;
    SvgOptions svg;
    // run
    PipelineConfig pipeline;
    std::string run_lang = "eu";
};

int dispatch(CLI::App& app, int argc, char** argv);

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Life-stage and retweet-community analysis for tweet corpora"};
    app.require_subcommand(1);
    return dispatch(app, argc, argv);
}

namespace {

int dispatch(CLI::App& app, int argc, char** argv) {
    auto state = std::make_shared<CliState>();
    CliState& s = *state;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Read a tweets.jsonl file and report corpus stats");
    ingest->add_option("--input", s.input, "tweets.jsonl path")->required();
    ingest->add_option("--stats-out", s.stats_out, "where to write stats JSON (stdout when omitted)");
    ingest->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(ingest);
    ingest->callback([&s] {
        const Corpus corpus = ingest_jsonl(s.input);
        write_or_print(s.stats_out, stats_to_json(corpus.stats()));
    });

    // build-dataset
    auto* build = app.add_subcommand("build-dataset", "Rank users by informal fraction and harvest a labeled dataset");
    build->add_option("--corpus", s.corpus, "tweets.jsonl path")->required();
    build->add_option("--predictions", s.predictions, "style predictions TSV (tweet_id, informal/formal, score)");
    build->add_option("--seed-data", s.seed_data, "labeled style JSONL to train the seed classifier instead");
    build->add_option("--lexicon", s.lexicons, "cluster lexicon TSV (repeatable)");
    build->add_option("--n-per-class", s.n_per_class, "users per extreme");
    build->add_option("--per-user", s.per_user, "tweets sampled per user");
    build->add_option("--ratios", s.ratios, "train/dev/test ratios")->expected(3);
    build->add_option("--seed", s.seed, "global seed");
    build->add_option("--out", s.out, "dataset JSONL output")->required();
    add_config_option(build);
    build->callback([&s] {
        if (s.predictions.empty() && s.seed_data.empty()) {
            throw UsageError("build-dataset needs --predictions or --seed-data");
        }
        const Corpus corpus = ingest_jsonl(s.corpus);
        std::vector<TweetPrediction> style;
        if (!s.predictions.empty()) {
            style = read_predictions_tsv(s.predictions);
        } else {
            LabeledDataset seed_set = read_dataset_jsonl(s.seed_data);
            for (auto& ex : seed_set.examples) ex.text = preprocess(ex.text);
            TrainConfig cfg = s.train_config;
            cfg.seed = s.seed;
            const auto lexicons = load_lexicons(s.lexicons);
            const LinearModel style_model = train(seed_set.examples, cfg, lexicons);
            for (const auto& [uid, tl] : corpus) {
                for (const auto& t : tl.tweets) {
                    style.push_back(style_model.predict(t.tweet_id, preprocess(t.text), lexicons));
                }
            }
        }
        const auto ranking = rank_users(group_predictions_by_user(corpus, style));
        const auto extremes = select_extremes(ranking, s.n_per_class);
        std::map<std::string, std::string> labels;
        for (const auto& uid : extremes.young) labels[uid] = "young";
        for (const auto& uid : extremes.adult) labels[uid] = "adult";
        LabeledDataset ds = sample_tweets(corpus, labels, s.per_user, s.seed);
        for (auto& ex : ds.examples) ex.text = preprocess(ex.text);
        split_dataset(ds, {s.ratios[0], s.ratios[1], s.ratios[2]}, s.seed);
        write_file(s.out, dataset_to_jsonl(ds));
    });

    // train
    auto* train_cmd = app.add_subcommand("train", "Train the sparse linear tweet classifier");
    train_cmd->add_option("--data", s.data, "dataset JSONL")->required();
    train_cmd->add_option("--split", s.split, "split to train on (empty = all examples)");
    train_cmd->add_option("--lexicon", s.lexicons, "cluster lexicon TSV (repeatable)");
    train_cmd->add_option("--lr", s.train_config.learning_rate, "initial learning rate");
    train_cmd->add_option("--epochs", s.train_config.epochs, "SGD epochs");
    train_cmd->add_option("--l2", s.train_config.l2, "L2 strength");
    train_cmd->add_option("--min-freq", s.train_config.min_feature_frequency, "minimum feature document frequency");
    train_cmd->add_option("--seed", s.train_config.seed, "shuffle seed");
    train_cmd->add_option("--out", s.out, "model JSON output")->required();
    add_config_option(train_cmd);
    train_cmd->callback([&s] {
        const LabeledDataset ds = read_dataset_jsonl(s.data);
        const auto examples = s.split.empty() ? ds.examples : ds.with_split(s.split);
        if (examples.empty()) throw DataError("no examples in split '" + s.split + "'");
        const LinearModel model = train(examples, s.train_config, load_lexicons(s.lexicons));
        model.save(s.out);
    });

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Score every tweet in a corpus with a trained model");
    predict_cmd->add_option("--model", s.model, "model JSON")->required();
    predict_cmd->add_option("--in", s.input, "tweets.jsonl to score")->required();
    predict_cmd->add_option("--lexicon", s.lexicons, "cluster lexicon TSV (repeatable)");
    predict_cmd->add_option("--out", s.out, "predictions TSV output")->required();
    predict_cmd->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(predict_cmd);
    predict_cmd->callback([&s] {
        const LinearModel model = LinearModel::load(s.model);
        const Corpus corpus = ingest_jsonl(s.input);
        const auto lexicons = load_lexicons(s.lexicons);
        std::vector<TweetPrediction> preds;
        for (const auto& [uid, tl] : corpus) {
            for (const auto& t : tl.tweets) {
                preds.push_back(model.predict(t.tweet_id, preprocess(t.text), lexicons));
            }
        }
        write_file(s.out, predictions_to_tsv(preds));
    });

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a model on a dataset split");
    eval_cmd->add_option("--model", s.model, "model JSON")->required();
    eval_cmd->add_option("--data", s.data, "dataset JSONL")->required();
    eval_cmd->add_option("--split", s.eval_split, "split to evaluate");
    eval_cmd->add_option("--lexicon", s.lexicons, "cluster lexicon TSV (repeatable)");
    eval_cmd->add_option("--out", s.out, "metrics JSON output (stdout when omitted)");
    eval_cmd->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(eval_cmd);
    eval_cmd->callback([&s] {
        const LinearModel model = LinearModel::load(s.model);
        const LabeledDataset ds = read_dataset_jsonl(s.data);
        const auto examples = s.eval_split.empty() ? ds.examples : ds.with_split(s.eval_split);
        const Metrics m = evaluate(model, examples, load_lexicons(s.lexicons));
        write_or_print(s.out, metrics_json(m).dump(2) + "\n");
    });

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "Aggregate per-tweet predictions into per-user life stages");
    agg->add_option("--predictions", s.predictions, "young/adult predictions TSV")->required();
    agg->add_option("--upper", s.upper, "young threshold");
    agg->add_option("--lower", s.lower, "adult threshold");
    agg->add_flag("--mean-probability", s.mean_probability, "aggregate mean score instead of label fraction");
    agg->add_flag("--originals-only", s.originals_only, "ignore predictions for retweets (needs --corpus)");
    agg->add_option("--corpus", s.corpus, "tweets.jsonl (required, used to group tweets by author)")->required();
    agg->add_option("--out", s.out, "lifestages CSV output")->required();
    agg->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(agg);
    agg->callback([&s] {
        const Corpus corpus = ingest_jsonl(s.corpus);
        std::vector<TweetPrediction> preds = read_predictions_tsv(s.predictions);
        if (s.originals_only) {
            std::set<std::string> retweet_ids;
            for (const auto& [uid, tl] : corpus) {
                for (const auto& t : tl.tweets) {
                    if (t.is_retweet()) retweet_ids.insert(t.tweet_id);
                }
            }
            std::erase_if(preds, [&](const TweetPrediction& p) { return retweet_ids.count(p.tweet_id) > 0; });
        }
        ThresholdConfig thresholds{s.upper, s.lower, s.mean_probability};
        const CorpusLifeStages stages = classify_corpus(group_predictions_by_user(corpus, preds), thresholds);
        write_file(s.out, lifestages_to_csv(stages));
        json counts = {{"young", stages.counts.young},
                       {"adult", stages.counts.adult},
                       {"underdetermined", stages.counts.underdetermined}};
        std::cout << counts.dump(2) << "\n";
    });

    // compare
    auto* cmp = app.add_subcommand("compare", "Transition matrix between two labelings");
    cmp->add_option("--old", s.old_csv, "old lifestages CSV")->required();
    cmp->add_option("--new", s.new_csv, "new lifestages CSV")->required();
    cmp->add_option("--out", s.out, "transitions CSV output (stdout when omitted)");
    cmp->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(cmp);
    cmp->callback([&s] {
        const auto a = labels_of(read_lifestages_csv(s.old_csv));
        const auto b = labels_of(read_lifestages_csv(s.new_csv));
        const TransitionMatrix m = compare_methods(a, b);
        write_or_print(s.out, transitions_to_csv(m));
        if (!s.out.empty()) {
            std::cout << "changed_fraction " << fmt_double(m.changed_fraction(), 6) << "\n";
        }
    });

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "Build the retweet graph of the young cohort");
    graph_cmd->add_option("--corpus", s.corpus, "tweets.jsonl")->required();
    graph_cmd->add_option("--lifestages", s.lifestages_csv, "lifestages CSV")->required();
    graph_cmd->add_option("--lang", s.lang, "only count retweets with this lang (empty = all)");
    graph_cmd->add_option("--out", s.out, "edges CSV output")->required();
    graph_cmd->add_option("--report", s.report_out, "where to write build stats JSON");
    graph_cmd->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(graph_cmd);
    graph_cmd->callback([&s] {
        const Corpus corpus = ingest_jsonl(s.corpus);
        const CorpusLifeStages stages = read_lifestages_csv(s.lifestages_csv);
        std::set<std::string> young;
        for (const auto& u : stages.users) {
            if (u.label == LifeStage::young) young.insert(u.user_id);
        }
        GraphBuildReport rep;
        std::optional<std::string> filter;
        if (!s.lang.empty()) filter = s.lang;
        const RetweetGraph graph = build_graph(corpus, young, filter, &rep);
        write_file(s.out, edges_to_csv(graph));
        json j = {{"nodes", graph.n_nodes()},
                  {"edges", graph.n_edges()},
                  {"retweet_records", rep.retweet_records},
                  {"self_loops_dropped", rep.self_loops_dropped},
                  {"lang_filtered", rep.lang_filtered}};
        write_or_print(s.report_out, j.dump(2) + "\n");
    });

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "Influencer rankings over the retweet graph");
    rank_cmd->add_option("--graph", s.graph_csv, "edges CSV")->required();
    rank_cmd->add_option("--kind", s.kind, "total | distinct")->check(CLI::IsMember({"total", "distinct"}));
    rank_cmd->add_option("--top", s.top, "entries to keep");
    rank_cmd->add_option("--out", s.out, "ranking CSV output (stdout when omitted)");
    rank_cmd->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(rank_cmd);
    rank_cmd->callback([&s] {
        const RetweetGraph graph = read_edges_csv(s.graph_csv);
        const InfluencerRanking ranking =
            s.kind == "total" ? rank_total_retweets(graph, s.top) : rank_distinct_retweeters(graph, s.top);
        write_or_print(s.out, ranking_to_csv(ranking));
    });

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "node2vec embeddings of the retweet graph");
    embed_cmd->add_option("--graph", s.graph_csv, "edges CSV")->required();
    embed_cmd->add_option("--dims", s.sgns.dimensions, "embedding dimensions");
    embed_cmd->add_option("--p", s.walk.p, "return parameter");
    embed_cmd->add_option("--q", s.walk.q, "in-out parameter");
    embed_cmd->add_option("--walk-length", s.walk.walk_length, "nodes per walk");
    embed_cmd->add_option("--walks-per-node", s.walk.walks_per_node, "walks started at each node");
    embed_cmd->add_option("--window", s.sgns.window, "context window");
    embed_cmd->add_option("--negatives", s.sgns.negatives, "negative samples per pair");
    embed_cmd->add_option("--epochs", s.sgns.epochs, "SGNS epochs");
    embed_cmd->add_option("--lr", s.sgns.learning_rate, "initial learning rate");
    embed_cmd->add_option("--threads", s.sgns.threads, "training threads (>1 is nondeterministic)");
    embed_cmd->add_flag("--directed", s.directed, "walk the directed graph instead of the symmetrized one");
    embed_cmd->add_option("--mode", s.mode, "second-order tables: auto | precomputed | on-the-fly")
        ->check(CLI::IsMember({"auto", "precomputed", "on-the-fly"}));
    embed_cmd->add_option("--seed", s.seed, "walk + SGNS seed");
    embed_cmd->add_option("--out", s.out, "embeddings output")->required();
    add_config_option(embed_cmd);
    embed_cmd->callback([&s] {
        const RetweetGraph graph = read_edges_csv(s.graph_csv);
        WalkConfig wc = s.walk;
        wc.directed = s.directed;
        wc.seed = s.seed;
        wc.mode = s.mode == "precomputed" ? WalkConfig::TransitionMode::precomputed
                  : s.mode == "on-the-fly" ? WalkConfig::TransitionMode::on_the_fly
                                           : WalkConfig::TransitionMode::automatic;
        const WalkGraph wg(graph, wc.directed);
        const auto walks = generate_walks(wg, wc);
        SgnsConfig sc = s.sgns;
        sc.seed = s.seed;
        const EmbeddingMatrix emb = train_sgns(walks, sc);
        std::vector<std::string> names;
        for (std::uint32_t i = 0; i < graph.n_nodes(); ++i) names.push_back(graph.node_name(i));
        write_file(s.out, embeddings_to_text(emb, names));
    });

    // communities
    auto* comm = app.add_subcommand("communities", "k-means communities over node embeddings");
    comm->add_option("--embeddings", s.embeddings, "embeddings file")->required();
    comm->add_option("--k", s.kmeans.k, "number of communities");
    comm->add_option("--restarts", s.kmeans.restarts, "k-means++ restarts");
    comm->add_option("--seed", s.kmeans.seed, "k-means seed");
    comm->add_option("--graph", s.graph_csv, "edges CSV for the per-community report");
    comm->add_option("--top", s.community_top, "top members per community in the report");
    comm->add_option("--out", s.out, "communities CSV output")->required();
    add_config_option(comm);
    comm->callback([&s] {
        const NamedEmbeddings emb = read_embeddings_text(s.embeddings);
        const CommunityAssignment assignment = kmeans_communities(emb, s.kmeans);
        write_file(s.out, communities_to_csv(assignment));
        json j = json::array();
        if (!s.graph_csv.empty()) {
            const RetweetGraph graph = read_edges_csv(s.graph_csv);
            for (const auto& rep : characterize_communities(assignment, graph, s.community_top)) {
                json members = json::array();
                for (const auto& m : rep.top_members) {
                    members.push_back({{"user_id", m.user_id}, {"total_retweets", m.total_retweets}});
                }
                j.push_back({{"community", rep.community}, {"size", rep.size}, {"share", rep.share}, {"top", members}});
            }
        } else {
            for (std::size_t c = 0; c < assignment.k; ++c) {
                j.push_back({{"community", c}, {"share", assignment.shares[c]}});
            }
        }
        std::cout << j.dump(2) << "\n";
    });

    // layout
    auto* layout_cmd = app.add_subcommand("layout", "ForceAtlas2 spatialization of the graph");
    layout_cmd->add_option("--graph", s.graph_csv, "edges CSV")->required();
    layout_cmd->add_option("--iterations", s.layout_config.iterations, "layout iterations");
    layout_cmd->add_option("--scaling", s.layout_config.scaling, "repulsion scaling k_r");
    layout_cmd->add_option("--gravity", s.layout_config.gravity, "gravity k_g");
    layout_cmd->add_flag("--linlog", s.layout_config.use_linlog, "LinLog attraction");
    layout_cmd->add_flag("--exact", s.force_exact, "force exact repulsion");
    layout_cmd->add_flag("--barnes-hut", s.force_bh, "force Barnes-Hut repulsion");
    layout_cmd->add_option("--theta", s.layout_config.theta, "Barnes-Hut opening angle");
    layout_cmd->add_option("--delta", s.layout_config.edge_weight_influence, "edge weight influence");
    layout_cmd->add_option("--threads", s.layout_config.threads, "force accumulation threads");
    layout_cmd->add_option("--seed", s.layout_config.seed, "position init seed");
    layout_cmd->add_option("--out", s.out, "positions CSV output")->required();
    add_config_option(layout_cmd);
    layout_cmd->callback([&s] {
        if (s.force_exact && s.force_bh) throw UsageError("choose one of --exact / --barnes-hut");
        LayoutConfig lc = s.layout_config;
        if (s.force_exact) lc.barnes_hut = 0;
        if (s.force_bh) lc.barnes_hut = 1;
        const RetweetGraph graph = read_edges_csv(s.graph_csv);
        const LayoutGraph lg = LayoutGraph::from(graph);
        const auto positions = layout(lg, lc);
        write_file(s.out, positions_to_csv(lg, positions));
    });

    // export-gexf
    auto* gexf_cmd = app.add_subcommand("export-gexf", "Write the annotated graph as GEXF 1.2draft");
    gexf_cmd->add_option("--graph", s.graph_csv, "edges CSV")->required();
    gexf_cmd->add_option("--lifestages", s.lifestages_csv, "lifestages CSV");
    gexf_cmd->add_option("--communities", s.communities_csv, "communities CSV");
    gexf_cmd->add_option("--positions", s.positions, "positions CSV");
    gexf_cmd->add_option("--out", s.out, "GEXF output")->required();
    gexf_cmd->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(gexf_cmd);
    gexf_cmd->callback([&s] {
        const RetweetGraph graph = read_edges_csv(s.graph_csv);
        std::map<std::string, LifeStage> lifestage_map;
        if (!s.lifestages_csv.empty()) lifestage_map = labels_of(read_lifestages_csv(s.lifestages_csv));
        std::map<std::string, std::size_t> community_map;
        if (!s.communities_csv.empty()) community_map = read_communities_csv(s.communities_csv).community_of;
        std::map<std::string, Vec2> position_map;
        if (!s.positions.empty()) position_map = read_positions_csv(s.positions);
        export_gexf(graph, lifestage_map, community_map, position_map, s.out);
    });

    // render-svg
    auto* svg_cmd = app.add_subcommand("render-svg", "Render the community-colored layout as SVG");
    svg_cmd->add_option("--graph", s.graph_csv, "edges CSV")->required();
    svg_cmd->add_option("--positions", s.positions, "positions CSV")->required();
    svg_cmd->add_option("--communities", s.communities_csv, "communities CSV");
    svg_cmd->add_option("--max-edges", s.svg.max_edges, "skip edge lines above this count");
    svg_cmd->add_option("--width", s.svg.width, "canvas width");
    svg_cmd->add_option("--height", s.svg.height, "canvas height");
    svg_cmd->add_option("--out", s.out, "SVG output")->required();
    svg_cmd->add_option("--seed", s.seed, "unused, accepted for interface uniformity");
    add_config_option(svg_cmd);
    svg_cmd->callback([&s] {
        const RetweetGraph graph = read_edges_csv(s.graph_csv);
        const auto position_map = read_positions_csv(s.positions);
        std::map<std::string, std::size_t> community_map;
        if (!s.communities_csv.empty()) community_map = read_communities_csv(s.communities_csv).community_of;
        render_svg(graph, position_map, community_map, s.out, s.svg);
    });

    // run
    auto* run_cmd = app.add_subcommand("run", "Run the whole pipeline and write every artifact");
    run_cmd->add_option("--corpus", s.pipeline.corpus_path, "tweets.jsonl")->required();
    run_cmd->add_option("--out-dir", s.pipeline.out_dir, "artifact directory")->required();
    run_cmd->add_option("--predictions", s.pipeline.lifestage_predictions_path, "young/adult predictions TSV");
    run_cmd->add_option("--style-predictions", s.pipeline.style_predictions_path, "informal/formal predictions TSV");
    run_cmd->add_option("--style-seed-data", s.pipeline.style_seed_data_path, "labeled style JSONL");
    run_cmd->add_option("--lexicon", s.pipeline.lexicon_paths, "cluster lexicon TSV (repeatable)");
    run_cmd->add_option("--seed", s.pipeline.seed, "global seed, all stage seeds derive from it");
    run_cmd->add_option("--basque-min", s.pipeline.basque_min_fraction, "Basque tweet fraction threshold");
    run_cmd->add_option("--n-per-class", s.pipeline.n_per_class, "users per ranking extreme");
    run_cmd->add_option("--per-user", s.pipeline.per_user, "tweets sampled per user");
    run_cmd->add_option("--upper", s.pipeline.thresholds.upper, "young threshold");
    run_cmd->add_option("--lower", s.pipeline.thresholds.lower, "adult threshold");
    run_cmd->add_flag("--mean-probability", s.pipeline.thresholds.use_mean_probability,
                      "aggregate mean score instead of label fraction");
    run_cmd->add_option("--lang", s.run_lang, "graph lang filter (empty = all)");
    run_cmd->add_option("--top", s.pipeline.rank_top_k, "ranking length");
    run_cmd->add_option("--community-top", s.pipeline.community_top_n, "top members per community");
    run_cmd->add_option("--train-lr", s.pipeline.classifier.learning_rate, "classifier learning rate");
    run_cmd->add_option("--train-epochs", s.pipeline.classifier.epochs, "classifier epochs");
    run_cmd->add_option("--l2", s.pipeline.classifier.l2, "classifier L2 strength");
    run_cmd->add_option("--min-freq", s.pipeline.classifier.min_feature_frequency, "feature frequency cutoff");
    run_cmd->add_option("--p", s.pipeline.walk.p, "return parameter");
    run_cmd->add_option("--q", s.pipeline.walk.q, "in-out parameter");
    run_cmd->add_option("--walk-length", s.pipeline.walk.walk_length, "nodes per walk");
    run_cmd->add_option("--walks-per-node", s.pipeline.walk.walks_per_node, "walks per node");
    run_cmd->add_option("--dims", s.pipeline.sgns.dimensions, "embedding dimensions");
    run_cmd->add_option("--window", s.pipeline.sgns.window, "SGNS window");
    run_cmd->add_option("--negatives", s.pipeline.sgns.negatives, "SGNS negatives");
    run_cmd->add_option("--sgns-epochs", s.pipeline.sgns.epochs, "SGNS epochs");
    run_cmd->add_option("--sgns-lr", s.pipeline.sgns.learning_rate, "SGNS learning rate");
    run_cmd->add_option("--threads", s.pipeline.sgns.threads, "SGNS threads (>1 nondeterministic)");
    run_cmd->add_option("--k", s.pipeline.kmeans.k, "number of communities");
    run_cmd->add_option("--restarts", s.pipeline.kmeans.restarts, "k-means++ restarts");
    run_cmd->add_option("--iterations", s.pipeline.layout.iterations, "layout iterations");
    run_cmd->add_option("--scaling", s.pipeline.layout.scaling, "layout repulsion scaling");
    run_cmd->add_option("--gravity", s.pipeline.layout.gravity, "layout gravity");
    run_cmd->add_flag("--linlog", s.pipeline.layout.use_linlog, "LinLog attraction");
    run_cmd->add_option("--theta", s.pipeline.layout.theta, "Barnes-Hut theta");
    run_cmd->add_option("--svg-max-edges", s.pipeline.svg.max_edges, "edge cap in the SVG");
    add_config_option(run_cmd);
    run_cmd->callback([&s] {
        if (s.run_lang.empty()) {
            s.pipeline.graph_lang_filter = std::nullopt;
        } else {
            s.pipeline.graph_lang_filter = s.run_lang;
        }
        const AnalysisReport report = run_pipeline(s.pipeline);
        std::cout << report.to_json();
    });

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config_args(app, std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace
