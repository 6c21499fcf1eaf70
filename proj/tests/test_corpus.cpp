#include "doctest.h"

#include "lifegraph/corpus.hpp"
#include "lifegraph/errors.hpp"
#include "lifegraph/rng.hpp"

using namespace lifegraph;

namespace {

std::string record(const std::string& tweet_id, const std::string& user_id, const std::string& lang = "eu",
                   const std::string& created = "2018-05-01T10:00:00Z", const char* rt = nullptr) {
    std::string r = R"({"tweet_id":")" + tweet_id + R"(","user_id":")" + user_id +
                    R"(","text":"kaixo mundua","lang":")" + lang + R"(","created_at":")" + created + R"(",)";
    r += rt ? R"("retweet_of_user_id":")" + std::string(rt) + R"("})" : R"("retweet_of_user_id":null})";
    return r + "\n";
}

} // namespace

TEST_CASE("ingest groups tweets by user") {
    const std::string text = record("t1", "ane") + record("t2", "jon") + record("t3", "ane");
    const Corpus corpus = ingest_jsonl_text(text, "test");
    CHECK(corpus.n_users() == 2);
    CHECK(corpus.at("ane").tweets.size() == 2);
    CHECK(corpus.at("jon").tweets.size() == 1);

    // stable iteration order: sorted by user_id
    std::vector<std::string> order;
    for (const auto& [uid, tl] : corpus) order.push_back(uid);
    CHECK(order == std::vector<std::string>{"ane", "jon"});
}

TEST_CASE("ingest of an empty file yields an empty corpus") {
    const Corpus corpus = ingest_jsonl_text("", "test");
    CHECK(corpus.n_users() == 0);
    CHECK(corpus.stats().n_tweets == 0);
}

TEST_CASE("ingest rejects duplicate tweet ids naming the id") {
    const std::string text = record("t1", "ane") + record("t1", "jon");
    CHECK_THROWS_WITH_AS(ingest_jsonl_text(text, "test"), doctest::Contains("t1"), DataError);
}

TEST_CASE("ingest rejects malformed lines with the line number") {
    const std::string text = record("t1", "ane") + "{not json\n";
    CHECK_THROWS_WITH_AS(ingest_jsonl_text(text, "test"), doctest::Contains("test:2"), DataError);

    CHECK_THROWS_AS(ingest_jsonl_text(R"({"tweet_id":"x"})" "\n", "test"), DataError);
}

TEST_CASE("grouping conserves tweets") {
    Rng rng(99);
    std::string text;
    std::size_t n = 0;
    for (int i = 0; i < 200; ++i) {
        text += record("t" + std::to_string(i), "u" + std::to_string(rng.next_below(17)));
        ++n;
    }
    const Corpus corpus = ingest_jsonl_text(text, "test");
    std::size_t total = 0;
    for (const auto& [uid, tl] : corpus) total += tl.tweets.size();
    CHECK(total == n);
    CHECK(corpus.stats().n_tweets == n);
}

TEST_CASE("timelines are ordered by created_at") {
    const std::string text = record("t2", "ane", "eu", "2018-05-02T10:00:00Z") +
                             record("t1", "ane", "eu", "2018-05-01T10:00:00Z") +
                             record("t3", "ane", "eu", "2018-05-01T09:00:00Z");
    const Corpus corpus = ingest_jsonl_text(text, "test");
    const auto& tweets = corpus.at("ane").tweets;
    CHECK(tweets[0].tweet_id == "t3");
    CHECK(tweets[1].tweet_id == "t1");
    CHECK(tweets[2].tweet_id == "t2");
}

TEST_CASE("basque_users applies a closed 20% bound") {
    std::string text;
    for (int i = 0; i < 10; ++i) text += record("a" + std::to_string(i), "ane", i < 2 ? "eu" : "es");
    for (int i = 0; i < 10; ++i) text += record("j" + std::to_string(i), "jon", i < 1 ? "eu" : "es");
    const Corpus corpus = ingest_jsonl_text(text, "test");

    const auto users = basque_users(corpus, 0.20);
    CHECK(users.count("ane") == 1);  // exactly 2/10
    CHECK(users.count("jon") == 0);  // 1/10

    CHECK(basque_users(corpus, 0.0).size() == 2);
    CHECK_THROWS_AS(basque_users(corpus, 1.5), UsageError);

    // monotone in the threshold
    std::size_t prev = corpus.n_users();
    for (double f : {0.0, 0.1, 0.2, 0.5, 1.0}) {
        const std::size_t now = basque_users(corpus, f).size();
        CHECK(now <= prev);
        prev = now;
    }
}

TEST_CASE("iso8601 parsing and formatting") {
    CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_iso8601_utc("2018-05-01T08:00:00Z") == 1525161600);
    CHECK(parse_iso8601_utc("2018-05-01 08:00:00") == 1525161600);
    CHECK(parse_iso8601_utc("2018-05-01T08:00:00.123Z") == 1525161600);
    CHECK(parse_iso8601_utc("2018-05-01T08:00:00+00:00") == 1525161600);
    CHECK(format_iso8601_utc(1525161600) == "2018-05-01T08:00:00Z");
    CHECK_THROWS_AS(parse_iso8601_utc("01/05/2018"), DataError);
    CHECK_THROWS_AS(parse_iso8601_utc("2018-13-01T00:00:00Z"), DataError);

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t t = static_cast<std::int64_t>(rng.next_below(4102444800ULL));
        CHECK(parse_iso8601_utc(format_iso8601_utc(t)) == t);
    }
}

TEST_CASE("ingest keeps self-retweets for the graph stage to drop") {
    const std::string text = record("t1", "ane", "eu", "2018-05-01T10:00:00Z", "ane");
    const Corpus corpus = ingest_jsonl_text(text, "test");
    CHECK(corpus.at("ane").tweets[0].retweet_of_user_id == "ane");
}
