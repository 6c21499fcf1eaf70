#include "doctest.h"

#include <algorithm>

#include "lifegraph/corpus.hpp"
#include "lifegraph/errors.hpp"
#include "lifegraph/retweet_graph.hpp"
#include "lifegraph/rng.hpp"

using namespace lifegraph;

namespace {

// A retweet log: (retweeter, retweeted-or-empty) pairs become a corpus.
Corpus corpus_from_log(const std::vector<std::pair<std::string, std::string>>& events, const std::string& lang = "eu") {
    Corpus corpus;
    std::size_t id = 0;
    for (const auto& [user, target] : events) {
        Tweet t;
        t.tweet_id = "t" + std::to_string(id);
        t.user_id = user;
        t.text = "testua";
        t.lang = lang;
        t.created_at = static_cast<std::int64_t>(1525161600 + id * 60);
        if (!target.empty()) t.retweet_of_user_id = target;
        corpus.add(std::move(t));
        ++id;
    }
    corpus.sort_timelines();
    return corpus;
}

} // namespace

TEST_CASE("build_graph aggregates retweet events into weighted edges") {
    const Corpus corpus = corpus_from_log({{"A", "B"}, {"A", "B"}, {"C", "B"}});
    GraphBuildReport report;
    const RetweetGraph graph = build_graph(corpus, {"A", "C"}, std::nullopt, &report);

    CHECK(graph.n_nodes() == 3);
    CHECK(graph.n_edges() == 2);
    const auto a = graph.node_index("A");
    const auto b = graph.node_index("B");
    const auto c = graph.node_index("C");
    REQUIRE(a);
    REQUIRE(b);
    REQUIRE(c);
    REQUIRE(graph.out_edges(*a).size() == 1);
    CHECK(graph.out_edges(*a)[0].target == *b);
    CHECK(graph.out_edges(*a)[0].weight == 2);
    CHECK(graph.total_in_weight(*b) == 3);
    CHECK(graph.in_degree(*b) == 2);
    CHECK(report.retweet_records == 3);
    CHECK(report.self_loops_dropped == 0);
}

TEST_CASE("build_graph with no retweets yields an empty graph") {
    const Corpus corpus = corpus_from_log({{"A", ""}, {"B", ""}});
    const RetweetGraph graph = build_graph(corpus, {"A", "B"}, std::nullopt, nullptr);
    CHECK(graph.n_nodes() == 0);
    CHECK(graph.n_edges() == 0);
}

TEST_CASE("self-retweets are dropped and reported") {
    const Corpus corpus = corpus_from_log({{"A", "A"}, {"A", "B"}});
    GraphBuildReport report;
    const RetweetGraph graph = build_graph(corpus, {"A"}, std::nullopt, &report);
    CHECK(report.self_loops_dropped == 1);
    CHECK(graph.n_edges() == 1);
    CHECK(graph.n_nodes() == 2);
}

TEST_CASE("only young users' retweets create edges; lang filter applies") {
    const Corpus corpus = corpus_from_log({{"A", "B"}, {"X", "B"}});
    const RetweetGraph graph = build_graph(corpus, {"A"}, std::nullopt, nullptr);
    CHECK(graph.n_nodes() == 2);  // X's retweet ignored

    Corpus mixed;
    std::size_t id = 0;
    for (const char* lang : {"eu", "es", "eu"}) {
        Tweet t;
        t.tweet_id = "m" + std::to_string(id++);
        t.user_id = "A";
        t.text = "x";
        t.lang = lang;
        t.created_at = 0;
        t.retweet_of_user_id = "B";
        mixed.add(std::move(t));
    }
    mixed.sort_timelines();
    GraphBuildReport report;
    const RetweetGraph filtered = build_graph(mixed, {"A"}, std::string("eu"), &report);
    CHECK(filtered.out_edges(*filtered.node_index("A"))[0].weight == 2);
    CHECK(report.lang_filtered == 1);
    CHECK(report.retweet_records == 2);
}

TEST_CASE("graph conservation holds over random retweet logs") {
    Rng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<std::string, std::string>> events;
        const std::size_t n_users = 2 + rng.next_below(8);
        const std::size_t n_events = rng.next_below(60);
        std::set<std::string> young;
        for (std::size_t e = 0; e < n_events; ++e) {
            const std::string src = "u" + std::to_string(rng.next_below(n_users));
            const std::string dst = rng.next_double() < 0.1 ? src : "u" + std::to_string(rng.next_below(n_users + 4));
            events.push_back({src, dst});
            young.insert(src);
        }
        GraphBuildReport report;
        const RetweetGraph graph = build_graph(corpus_from_log(events), young, std::nullopt, &report);

        std::int64_t total_weight = 0;
        for (std::uint32_t v = 0; v < graph.n_nodes(); ++v) {
            total_weight += graph.total_in_weight(v);
            CHECK(graph.in_degree(v) <= graph.total_in_weight(v));
        }
        CHECK(static_cast<std::size_t>(total_weight) + report.self_loops_dropped == n_events);
    }
}

TEST_CASE("graph build is order-independent") {
    std::vector<std::pair<std::string, std::string>> events{{"A", "B"}, {"C", "B"}, {"A", "D"}, {"C", "D"}, {"A", "B"}};
    const std::set<std::string> young{"A", "C"};
    const std::string csv1 = edges_to_csv(build_graph(corpus_from_log(events), young, std::nullopt, nullptr));
    std::reverse(events.begin(), events.end());
    const std::string csv2 = edges_to_csv(build_graph(corpus_from_log(events), young, std::nullopt, nullptr));
    CHECK(csv1 == csv2);
}

TEST_CASE("rankings order by value then user id") {
    const Corpus corpus = corpus_from_log({{"A", "B"}, {"A", "B"}, {"C", "B"}, {"A", "D"}});
    const RetweetGraph graph = build_graph(corpus, {"A", "C"}, std::nullopt, nullptr);

    const auto total = rank_total_retweets(graph, 10);
    REQUIRE(!total.entries.empty());
    CHECK(total.entries[0].user_id == "B");
    CHECK(total.entries[0].value == 3);
    CHECK(total.entries.size() == graph.n_nodes());  // top_k larger than node count

    const auto distinct = rank_distinct_retweeters(graph, 2);
    CHECK(distinct.entries.size() == 2);
    CHECK(distinct.entries[0].user_id == "B");
    CHECK(distinct.entries[0].value == 2);

    // tie on value 1: A and C both have zero in-edges, D has one
    const auto full = rank_total_retweets(graph, 4);
    CHECK(full.entries[1].user_id == "D");
    CHECK(full.entries[2].user_id == "A");
    CHECK(full.entries[3].user_id == "C");
}

TEST_CASE("a retweet star diverges total vs distinct as intended") {
    std::vector<std::pair<std::string, std::string>> events;
    std::set<std::string> young;
    for (int u = 0; u < 5; ++u) {
        const std::string src = "u" + std::to_string(u);
        young.insert(src);
        for (int k = 0; k < 10; ++k) events.push_back({src, "hub"});
    }
    const RetweetGraph graph = build_graph(corpus_from_log(events), young, std::nullopt, nullptr);
    const auto hub = graph.node_index("hub");
    REQUIRE(hub);
    CHECK(graph.total_in_weight(*hub) == 50);
    CHECK(graph.in_degree(*hub) == 5);
}

TEST_CASE("edges csv round-trips") {
    const Corpus corpus = corpus_from_log({{"A", "B"}, {"A", "B"}, {"C", "B"}});
    const RetweetGraph graph = build_graph(corpus, {"A", "C"}, std::nullopt, nullptr);
    const std::string csv = edges_to_csv(graph);
    const RetweetGraph back = parse_edges_csv(csv, "test");
    CHECK(edges_to_csv(back) == csv);
    CHECK(back.n_nodes() == graph.n_nodes());

    CHECK_THROWS_AS(parse_edges_csv("source,target,weight\nA,A,1\n", "test"), DataError);
    CHECK_THROWS_AS(parse_edges_csv("A,B,0\n", "test"), DataError);
    CHECK_THROWS_AS(parse_edges_csv("A,B\n", "test"), DataError);
}
