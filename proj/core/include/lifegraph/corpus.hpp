#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lifegraph {

struct Tweet {
    std::string tweet_id;
    std::string user_id;
    std::string text;
    std::string lang;                                // ISO-639-1 tag, trusted input
    std::int64_t created_at = 0;                     // seconds since epoch, UTC
    std::optional<std::string> retweet_of_user_id;   // null for original tweets

    bool is_retweet() const { return retweet_of_user_id.has_value(); }
};

struct UserTimeline {
    std::string user_id;
    std::vector<Tweet> tweets;  // ordered by created_at, then tweet_id

    double basque_fraction() const;
};

struct CorpusStats {
    std::size_t n_users = 0;
    std::size_t n_tweets = 0;
    std::size_t n_retweets = 0;
    std::map<std::string, std::size_t> per_lang;
};

// Immutable after ingestion; iteration order is sorted by user_id.
class Corpus {
public:
    using Map = std::map<std::string, UserTimeline>;

    Map::const_iterator begin() const { return timelines_.begin(); }
    Map::const_iterator end() const { return timelines_.end(); }
    std::size_t n_users() const { return timelines_.size(); }
    bool empty() const { return timelines_.empty(); }

    const UserTimeline* find(const std::string& user_id) const;
    const UserTimeline& at(const std::string& user_id) const;  // DataError when absent

    CorpusStats stats() const;

    // Used by ingest and by test fixtures.
    void add(Tweet tweet);
    void sort_timelines();

private:
    Map timelines_;
};

// Parses "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds and a 'Z' or
// +00:00 suffix. Throws DataError on anything else.
std::int64_t parse_iso8601_utc(const std::string& s);
std::string format_iso8601_utc(std::int64_t epoch_seconds);

// Reads a JSONL tweet file: one object per line with keys tweet_id, user_id,
// text, lang, created_at, retweet_of_user_id. Rejects duplicate tweet_ids
// (naming the id) and malformed lines (naming the 1-based line number).
Corpus ingest_jsonl(const std::string& path);
Corpus ingest_jsonl_text(const std::string& contents, const std::string& origin);

// Users whose Basque tweet fraction is >= min_fraction.
std::set<std::string> basque_users(const Corpus& corpus, double min_fraction = 0.20);

std::string stats_to_json(const CorpusStats& stats);

} // namespace lifegraph
