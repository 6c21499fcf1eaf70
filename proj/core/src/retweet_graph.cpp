#include "lifegraph/retweet_graph.hpp"

#include <algorithm>
#include <tuple>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"

namespace lifegraph {

std::uint32_t RetweetGraph::add_node(const std::string& user_id) {
    auto it = index_.find(user_id);
    if (it != index_.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(names_.size());
    index_.emplace(user_id, idx);
    names_.push_back(user_id);
    in_sample_.push_back(false);
    out_.emplace_back();
    in_.emplace_back();
    return idx;
}

std::optional<std::uint32_t> RetweetGraph::node_index(const std::string& user_id) const {
    auto it = index_.find(user_id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void RetweetGraph::add_edge(const std::string& source, const std::string& target, std::int64_t weight) {
    if (source == target) throw DataError("self-loop on '" + source + "'");
    if (weight < 1) throw DataError("edge weight must be >= 1");
    const std::uint32_t s = add_node(source);
    const std::uint32_t t = add_node(target);
    for (auto& e : out_[s]) {
        if (e.target == t) {
            e.weight += weight;
            for (auto& r : in_[t]) {
                if (r.target == s) {
                    r.weight += weight;
                    return;
                }
            }
            return;
        }
    }
    out_[s].push_back({t, weight});
    in_[t].push_back({s, weight});
    ++n_edges_;
}

std::int64_t RetweetGraph::total_in_weight(std::uint32_t node) const {
    std::int64_t sum = 0;
    for (const auto& e : in_[node]) sum += e.weight;
    return sum;
}

void RetweetGraph::canonicalize() {
    auto by_target = [](const Edge& a, const Edge& b) { return a.target < b.target; };
    for (auto& edges : out_) std::sort(edges.begin(), edges.end(), by_target);
    for (auto& edges : in_) std::sort(edges.begin(), edges.end(), by_target);
}

RetweetGraph build_graph(const Corpus& corpus, const std::set<std::string>& young_users,
                         const std::optional<std::string>& lang_filter, GraphBuildReport* report) {
    GraphBuildReport local;
    // Aggregate first; the sorted map keeps node numbering independent of
    // record order.
    std::map<std::pair<std::string, std::string>, std::int64_t> weights;
    for (const auto& uid : young_users) {
        const UserTimeline* tl = corpus.find(uid);
        if (!tl) throw DataError("young user '" + uid + "' not in corpus");
        for (const auto& t : tl->tweets) {
            if (!t.is_retweet()) continue;
            if (lang_filter && t.lang != *lang_filter) {
                ++local.lang_filtered;
                continue;
            }
            ++local.retweet_records;
            if (*t.retweet_of_user_id == uid) {
                ++local.self_loops_dropped;
                continue;
            }
            ++weights[{uid, *t.retweet_of_user_id}];
        }
    }
    RetweetGraph graph;
    for (const auto& [key, w] : weights) {
        graph.add_edge(key.first, key.second, w);
        graph.mark_in_sample(*graph.node_index(key.first));
    }
    graph.canonicalize();
    if (report) *report = local;
    return graph;
}

namespace {

InfluencerRanking build_ranking(const RetweetGraph& graph, RankKind kind, std::size_t top_k,
                                std::int64_t (*value_of)(const RetweetGraph&, std::uint32_t)) {
    std::vector<RankEntry> entries;
    entries.reserve(graph.n_nodes());
    for (std::uint32_t i = 0; i < graph.n_nodes(); ++i) {
        entries.push_back({graph.node_name(i), value_of(graph, i)});
    }
    std::sort(entries.begin(), entries.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.user_id < b.user_id;
    });
    if (entries.size() > top_k) entries.resize(top_k);
    return {kind, std::move(entries)};
}

} // namespace

InfluencerRanking rank_total_retweets(const RetweetGraph& graph, std::size_t top_k) {
    return build_ranking(graph, RankKind::total_retweets, top_k,
                         [](const RetweetGraph& g, std::uint32_t n) { return g.total_in_weight(n); });
}

InfluencerRanking rank_distinct_retweeters(const RetweetGraph& graph, std::size_t top_k) {
    return build_ranking(graph, RankKind::distinct_retweeters, top_k,
                         [](const RetweetGraph& g, std::uint32_t n) { return g.in_degree(n); });
}

std::string edges_to_csv(const RetweetGraph& graph) {
    // Canonical order: lexicographic by (source, target) name.
    std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
    rows.reserve(graph.n_edges());
    for (std::uint32_t s = 0; s < graph.n_nodes(); ++s) {
        for (const auto& e : graph.out_edges(s)) {
            rows.emplace_back(graph.node_name(s), graph.node_name(e.target), e.weight);
        }
    }
    std::sort(rows.begin(), rows.end());
    std::string out = "source,target,weight\n";
    for (const auto& [s, t, w] : rows) {
        out += s;
        out += ',';
        out += t;
        out += ',';
        out += fmt_int(w);
        out += '\n';
    }
    return out;
}

RetweetGraph parse_edges_csv(const std::string& contents, const std::string& origin) {
    RetweetGraph graph;
    auto lines = split_lines(contents);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (i == 0 && lines[i] == "source,target,weight") continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(i + 1));
        auto fields = split_on(lines[i], ',');
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
            throw DataError("expected 'source,target,weight' at " + where);
        }
        graph.add_edge(fields[0], fields[1], parse_int(fields[2], where));
    }
    for (std::uint32_t s = 0; s < graph.n_nodes(); ++s) {
        if (!graph.out_edges(s).empty()) graph.mark_in_sample(s);
    }
    graph.canonicalize();
    return graph;
}

RetweetGraph read_edges_csv(const std::string& path) { return parse_edges_csv(read_file(path), path); }

std::string ranking_to_csv(const InfluencerRanking& ranking) {
    const char* kind = ranking.kind == RankKind::total_retweets ? "total_retweets" : "distinct_retweeters";
    std::string out = "rank,user_id,value,kind\n";
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        out += fmt_int(static_cast<std::int64_t>(i + 1));
        out += ',';
        out += ranking.entries[i].user_id;
        out += ',';
        out += fmt_int(ranking.entries[i].value);
        out += ',';
        out += kind;
        out += '\n';
    }
    return out;
}

} // namespace lifegraph
