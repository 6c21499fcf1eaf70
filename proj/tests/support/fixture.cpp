#include "fixture.hpp"

#include <nlohmann/json.hpp>

#include "lifegraph/corpus.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/rng.hpp"

namespace lifegraph::testing {

namespace {

using nlohmann::json;

const std::vector<std::string> kInformal = {
    "jajaja", "jejeje", "holaaa",  "aupaaa", "goazeeen", "buaaa", "lolll",   "ondoooo",
    "tope",   "guay",   "jolasss", "biharr", "aiii",     "uffff", "siiii",   "nooo",
    "jaja",   "wapaa",  "txoooo",  "eyyy",   "parrandaa", "kkk",  "jijiji",  "ahhhh"};

const std::vector<std::string> kFormal = {
    "bilera",     "proiektua",      "agenda",     "txostena", "erakundea", "hauteskundeak",
    "ekonomia",   "azpiegitura",    "legebiltzarra", "administrazioa", "hezkuntza", "unibertsitatea",
    "ikerketa",   "aurrekontua",    "hitzarmena", "batzordea", "araudia",  "plangintza",
    "ebazpena",   "deialdia",       "jardunaldia", "txostengilea", "zuzendaritza", "ordezkaritza"};

const std::vector<std::string> kFiller = {"eta",  "da",   "ez",   "bai",  "gaur", "bihar",
                                          "asko", "oso",  "dugu", "dira", "egun", "berri",
                                          "ondo", "hemen", "zer",  "nola", "ere",  "baina"};

std::string make_text(bool informal, Rng& rng) {
    const auto& pool = informal ? kInformal : kFormal;
    const std::size_t n_tokens = 5 + rng.next_below(6);
    std::string text;
    for (std::size_t i = 0; i < n_tokens; ++i) {
        if (!text.empty()) text += ' ';
        // every tweet carries at least one style marker
        if (i == 0 || rng.next_double() < 0.45) {
            text += pool[rng.next_below(pool.size())];
        } else {
            text += kFiller[rng.next_below(kFiller.size())];
        }
    }
    return text;
}

std::string pad3(std::size_t v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03zu", v);
    return buf;
}

} // namespace

Fixture make_fixture(const FixtureSpec& spec) {
    Fixture fx;
    Rng rng(spec.seed);

    std::vector<std::string> young_users, adult_users;
    for (std::size_t i = 0; i < spec.users_per_class; ++i) {
        young_users.push_back("u" + pad3(i));
        adult_users.push_back("u" + pad3(spec.users_per_class + i));
    }
    for (const auto& u : young_users) fx.true_lifestage[u] = "young";
    for (const auto& u : adult_users) fx.true_lifestage[u] = "adult";

    std::vector<std::vector<std::string>> hubs(spec.communities);
    for (std::size_t c = 0; c < spec.communities; ++c) {
        for (std::size_t h = 0; h < spec.hubs_per_community; ++h) {
            const std::string id = "h" + std::to_string(c) + "_" + pad3(h);
            hubs[c].push_back(id);
            fx.planted_community[id] = static_cast<int>(c);
        }
    }
    for (std::size_t i = 0; i < young_users.size(); ++i) {
        fx.planted_community[young_users[i]] = static_cast<int>(i % spec.communities);
    }

    std::string jsonl, tsv;
    std::size_t tweet_no = 0;
    std::int64_t t0 = 1525161600;  // 2018-05-01T08:00:00Z

    auto emit_user = [&](const std::string& uid, bool young) {
        for (std::size_t k = 0; k < spec.tweets_per_user; ++k) {
            const std::string tweet_id = "t" + std::to_string(tweet_no++);
            const bool informal = rng.next_double() < spec.style_noise ? !young : young;
            const std::string text = make_text(informal, rng);
            const bool basque = rng.next_double() >= spec.non_basque_fraction;

            json rec;
            rec["tweet_id"] = tweet_id;
            rec["user_id"] = uid;
            rec["text"] = text;
            rec["lang"] = basque ? "eu" : "es";
            rec["created_at"] = format_iso8601_utc(t0 + static_cast<std::int64_t>(tweet_no) * 60);
            const bool is_retweet = young && rng.next_double() < spec.retweet_fraction;
            if (is_retweet) {
                const int own = fx.planted_community.at(uid);
                const std::size_t block = rng.next_double() < spec.own_community_prob
                                              ? static_cast<std::size_t>(own)
                                              : rng.next_below(spec.communities);
                const auto& pool = hubs[block];
                rec["retweet_of_user_id"] = pool[rng.next_below(pool.size())];
                ++fx.n_retweets;
            } else {
                rec["retweet_of_user_id"] = nullptr;
            }
            jsonl += rec.dump();
            jsonl += '\n';

            const bool predicted_informal = rng.next_double() < spec.prediction_noise ? !informal : informal;
            const double score = predicted_informal ? 0.85 + 0.1 * rng.next_double() : 0.05 + 0.1 * rng.next_double();
            tsv += tweet_id + "\t" + (predicted_informal ? "informal" : "formal") + "\t" + fmt_double(score, 6) + "\n";
            ++fx.n_tweets;
        }
        ++fx.n_users;
    };

    for (const auto& u : young_users) emit_user(u, true);
    for (const auto& u : adult_users) emit_user(u, false);

    fx.tweets_jsonl = std::move(jsonl);
    fx.style_predictions_tsv = std::move(tsv);
    return fx;
}

} // namespace lifegraph::testing
