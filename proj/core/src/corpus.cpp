#include "lifegraph/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"

namespace lifegraph {

using nlohmann::json;

double UserTimeline::basque_fraction() const {
    if (tweets.empty()) return 0.0;
    std::size_t eu = 0;
    for (const auto& t : tweets) {
        if (t.lang == "eu") ++eu;
    }
    return static_cast<double>(eu) / static_cast<double>(tweets.size());
}

const UserTimeline* Corpus::find(const std::string& user_id) const {
    auto it = timelines_.find(user_id);
    return it == timelines_.end() ? nullptr : &it->second;
}

const UserTimeline& Corpus::at(const std::string& user_id) const {
    const UserTimeline* tl = find(user_id);
    if (!tl) throw DataError("unknown user: " + user_id);
    return *tl;
}

CorpusStats Corpus::stats() const {
    CorpusStats s;
    s.n_users = timelines_.size();
    for (const auto& [uid, tl] : timelines_) {
        s.n_tweets += tl.tweets.size();
        for (const auto& t : tl.tweets) {
            if (t.is_retweet()) ++s.n_retweets;
            ++s.per_lang[t.lang];
        }
    }
    return s;
}

void Corpus::add(Tweet tweet) {
    auto& tl = timelines_[tweet.user_id];
    tl.user_id = tweet.user_id;
    tl.tweets.push_back(std::move(tweet));
}

void Corpus::sort_timelines() {
    for (auto& [uid, tl] : timelines_) {
        std::sort(tl.tweets.begin(), tl.tweets.end(), [](const Tweet& a, const Tweet& b) {
            if (a.created_at != b.created_at) return a.created_at < b.created_at;
            return a.tweet_id < b.tweet_id;
        });
    }
}

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

} // namespace

std::int64_t parse_iso8601_utc(const std::string& s) {
    // YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+00:00]
    auto fail = [&]() -> std::int64_t { throw DataError("invalid ISO-8601 timestamp: '" + s + "'"); };
    if (s.size() < 19) return fail();
    std::string_view v(s);
    if (v[4] != '-' || v[7] != '-' || (v[10] != 'T' && v[10] != ' ') || v[13] != ':' || v[16] != ':') return fail();
    auto year = v.substr(0, 4), mon = v.substr(5, 2), day = v.substr(8, 2);
    auto hh = v.substr(11, 2), mm = v.substr(14, 2), ss = v.substr(17, 2);
    if (!all_digits(year) || !all_digits(mon) || !all_digits(day) || !all_digits(hh) || !all_digits(mm) ||
        !all_digits(ss)) {
        return fail();
    }
    std::size_t i = 19;
    if (i < v.size() && v[i] == '.') {
        ++i;
        std::size_t digits = 0;
        while (i < v.size() && v[i] >= '0' && v[i] <= '9') ++i, ++digits;
        if (digits == 0) return fail();
    }
    if (i < v.size()) {
        std::string_view tz = v.substr(i);
        if (tz != "Z" && tz != "+00:00" && tz != "+0000") return fail();
    }
    int M = to_int(mon), D = to_int(day), h = to_int(hh), m = to_int(mm), sec = to_int(ss);
    if (M < 1 || M > 12 || D < 1 || D > 31 || h > 23 || m > 59 || sec > 60) return fail();
    return days_from_civil(to_int(year), static_cast<unsigned>(M), static_cast<unsigned>(D)) * 86400 + h * 3600 +
           m * 60 + sec;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<long long>(y), m, d,
                  static_cast<long long>(rem / 3600), static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

Corpus ingest_jsonl_text(const std::string& contents, const std::string& origin) {
    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(contents)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(line_no));
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("malformed JSON at " + where + ": " + e.what());
        }
        if (!obj.is_object()) throw DataError("expected a JSON object at " + where);

        Tweet t;
        try {
            t.tweet_id = obj.at("tweet_id").get<std::string>();
            t.user_id = obj.at("user_id").get<std::string>();
            t.text = obj.at("text").get<std::string>();
            t.lang = obj.at("lang").get<std::string>();
            t.created_at = parse_iso8601_utc(obj.at("created_at").get<std::string>());
            const auto& rt = obj.at("retweet_of_user_id");
            if (!rt.is_null()) t.retweet_of_user_id = rt.get<std::string>();
        } catch (const json::exception& e) {
            throw DataError("bad tweet record at " + where + ": " + e.what());
        }
        if (t.tweet_id.empty()) throw DataError("empty tweet_id at " + where);
        if (t.user_id.empty()) throw DataError("empty user_id at " + where);
        if (t.text.empty()) throw DataError("empty text at " + where);
        if (!seen_ids.insert(t.tweet_id).second) {
            throw DataError("duplicate tweet_id '" + t.tweet_id + "' at " + where);
        }
        corpus.add(std::move(t));
    }
    corpus.sort_timelines();
    return corpus;
}

Corpus ingest_jsonl(const std::string& path) { return ingest_jsonl_text(read_file(path), path); }

std::set<std::string> basque_users(const Corpus& corpus, double min_fraction) {
    if (min_fraction < 0.0 || min_fraction > 1.0) {
        throw UsageError("min_fraction must be in [0,1], got " + fmt_general(min_fraction, 6));
    }
    std::set<std::string> out;
    for (const auto& [uid, tl] : corpus) {
        if (tl.basque_fraction() >= min_fraction) out.insert(uid);
    }
    return out;
}

std::string stats_to_json(const CorpusStats& stats) {
    json j;
    j["n_users"] = stats.n_users;
    j["n_tweets"] = stats.n_tweets;
    j["n_retweets"] = stats.n_retweets;
    json langs = json::object();
    for (const auto& [lang, count] : stats.per_lang) langs[lang] = count;
    j["per_lang"] = langs;
    return j.dump(2) + "\n";
}

} // namespace lifegraph
