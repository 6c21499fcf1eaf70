#include "lifegraph/dataset.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/rng.hpp"

namespace lifegraph {

using nlohmann::json;

bool is_positive_label(const std::string& label) {
    if (label == "young" || label == "informal") return true;
    if (label == "adult" || label == "formal") return false;
    throw DataError("unknown label '" + label + "' (expected young/adult or informal/formal)");
}

void validate_label(const std::string& label) { (void)is_positive_label(label); }

std::vector<LabeledExample> LabeledDataset::with_split(const std::string& split) const {
    std::vector<LabeledExample> out;
    for (const auto& ex : examples) {
        if (ex.split == split) out.push_back(ex);
    }
    return out;
}

std::map<std::string, std::size_t> LabeledDataset::label_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& ex : examples) ++counts[ex.label];
    return counts;
}

std::vector<TweetPrediction> parse_predictions_tsv(const std::string& contents, const std::string& origin) {
    std::vector<TweetPrediction> out;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(contents)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(line_no));
        auto fields = split_on(line, '\t');
        if (fields.size() != 3) throw DataError("expected 3 tab-separated fields at " + where);
        TweetPrediction p;
        p.tweet_id = fields[0];
        p.label = fields[1];
        p.score = parse_double(fields[2], where);
        if (!(p.score >= 0.0 && p.score <= 1.0)) throw DataError("score out of [0,1] at " + where);
        if (is_positive_label(p.label) != (p.score >= 0.5)) {
            throw DataError("label '" + p.label + "' disagrees with score " + fmt_double(p.score, 6) + " at " + where);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<TweetPrediction> read_predictions_tsv(const std::string& path) {
    return parse_predictions_tsv(read_file(path), path);
}

std::string predictions_to_tsv(const std::vector<TweetPrediction>& predictions) {
    std::string out;
    for (const auto& p : predictions) {
        out += p.tweet_id;
        out += '\t';
        out += p.label;
        out += '\t';
        out += fmt_double(p.score, 6);
        out += '\n';
    }
    return out;
}

PredictionsByUser group_predictions_by_user(const Corpus& corpus, const std::vector<TweetPrediction>& predictions) {
    std::map<std::string, std::string> tweet_to_user;
    for (const auto& [uid, tl] : corpus) {
        for (const auto& t : tl.tweets) tweet_to_user[t.tweet_id] = uid;
    }
    PredictionsByUser grouped;
    for (const auto& p : predictions) {
        auto it = tweet_to_user.find(p.tweet_id);
        if (it == tweet_to_user.end()) throw DataError("prediction for unknown tweet_id '" + p.tweet_id + "'");
        grouped[it->second].push_back(p);
    }
    return grouped;
}

std::vector<UserRankEntry> rank_users(const PredictionsByUser& predictions) {
    std::vector<UserRankEntry> ranking;
    ranking.reserve(predictions.size());
    for (const auto& [uid, preds] : predictions) {
        if (preds.empty()) throw DataError("user '" + uid + "' has zero predicted tweets");
        std::size_t positive = 0;
        for (const auto& p : preds) {
            if (is_positive_label(p.label)) ++positive;
        }
        ranking.push_back({uid, static_cast<double>(positive) / static_cast<double>(preds.size()), preds.size()});
    }
    std::sort(ranking.begin(), ranking.end(), [](const UserRankEntry& a, const UserRankEntry& b) {
        if (a.informal_fraction != b.informal_fraction) return a.informal_fraction > b.informal_fraction;
        return a.user_id < b.user_id;
    });
    return ranking;
}

ExtremeSelection select_extremes(const std::vector<UserRankEntry>& ranking, std::size_t n_per_class) {
    if (ranking.size() < 2 * n_per_class) {
        throw DataError("ranking holds " + fmt_int(static_cast<std::int64_t>(ranking.size())) + " users, need " +
                        fmt_int(static_cast<std::int64_t>(2 * n_per_class)) + " (short by " +
                        fmt_int(static_cast<std::int64_t>(2 * n_per_class - ranking.size())) + ")");
    }
    ExtremeSelection sel;
    for (std::size_t i = 0; i < n_per_class; ++i) sel.young.insert(ranking[i].user_id);
    for (std::size_t i = ranking.size() - n_per_class; i < ranking.size(); ++i) sel.adult.insert(ranking[i].user_id);
    return sel;
}

LabeledDataset sample_tweets(const Corpus& corpus, const std::map<std::string, std::string>& user_labels,
                             std::size_t per_user, std::uint64_t seed) {
    LabeledDataset dataset;
    for (const auto& [uid, label] : user_labels) {
        validate_label(label);
        const UserTimeline& tl = corpus.at(uid);
        const std::size_t n = tl.tweets.size();
        const std::size_t take = std::min(per_user, n);

        // Partial Fisher-Yates over indices; stream keyed by user id.
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        Rng rng = Rng::stream(seed, uid);
        for (std::size_t i = 0; i < take; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
            std::swap(idx[i], idx[j]);
        }
        std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
        std::sort(chosen.begin(), chosen.end());
        for (std::size_t i : chosen) {
            dataset.examples.push_back({tl.tweets[i].text, label, uid, ""});
        }
    }
    return dataset;
}

void split_dataset(LabeledDataset& dataset, std::array<double, 3> ratios, std::uint64_t seed) {
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9) {
        throw UsageError("split ratios must sum to 1, got " + fmt_general(sum, 12));
    }
    for (double r : ratios) {
        if (r < 0) throw UsageError("split ratios must be non-negative");
    }

    // Users per class, shuffled deterministically.
    std::map<std::string, std::map<std::string, bool>> class_users;  // label -> user -> _
    std::map<std::string, std::string> user_label;
    for (const auto& ex : dataset.examples) {
        auto it = user_label.find(ex.user_id);
        if (it == user_label.end()) {
            user_label[ex.user_id] = ex.label;
        } else if (it->second != ex.label) {
            throw DataError("user '" + ex.user_id + "' carries two labels");
        }
        class_users[ex.label][ex.user_id] = true;
    }

    static const char* kSplits[3] = {"train", "dev", "test"};
    std::map<std::string, std::string> user_split;
    for (const auto& [label, users_map] : class_users) {
        std::vector<std::string> users;
        users.reserve(users_map.size());
        for (const auto& [uid, _] : users_map) users.push_back(uid);
        Rng rng = Rng::stream(seed, label);
        shuffle(users, rng);

        // Largest-remainder apportionment of users to the three splits.
        const std::size_t n = users.size();
        std::array<std::size_t, 3> counts{};
        std::array<double, 3> frac{};
        std::size_t assigned = 0;
        for (int k = 0; k < 3; ++k) {
            double exact = ratios[static_cast<std::size_t>(k)] * static_cast<double>(n);
            counts[static_cast<std::size_t>(k)] = static_cast<std::size_t>(std::floor(exact));
            frac[static_cast<std::size_t>(k)] = exact - std::floor(exact);
            assigned += counts[static_cast<std::size_t>(k)];
        }
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (frac[static_cast<std::size_t>(a)] != frac[static_cast<std::size_t>(b)])
                return frac[static_cast<std::size_t>(a)] > frac[static_cast<std::size_t>(b)];
            return a < b;
        });
        for (std::size_t r = assigned; r < n; ++r) {
            ++counts[static_cast<std::size_t>(order[(r - assigned) % 3])];
        }

        std::size_t pos = 0;
        for (int k = 0; k < 3; ++k) {
            for (std::size_t c = 0; c < counts[static_cast<std::size_t>(k)]; ++c) {
                user_split[users[pos++]] = kSplits[k];
            }
        }
    }

    for (auto& ex : dataset.examples) ex.split = user_split.at(ex.user_id);
}

std::string dataset_to_jsonl(const LabeledDataset& dataset) {
    std::string out;
    for (const auto& ex : dataset.examples) {
        json j;
        j["text"] = ex.text;
        j["label"] = ex.label;
        j["user_id"] = ex.user_id;
        j["split"] = ex.split;
        out += j.dump();
        out += '\n';
    }
    return out;
}

LabeledDataset parse_dataset_jsonl(const std::string& contents, const std::string& origin) {
    LabeledDataset dataset;
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
        LabeledExample ex;
        try {
            ex.text = obj.at("text").get<std::string>();
            ex.label = obj.at("label").get<std::string>();
            ex.user_id = obj.value("user_id", "");
            ex.split = obj.value("split", "");
        } catch (const json::exception& e) {
            throw DataError("bad example at " + where + ": " + e.what());
        }
        validate_label(ex.label);
        dataset.examples.push_back(std::move(ex));
    }
    return dataset;
}

LabeledDataset read_dataset_jsonl(const std::string& path) { return parse_dataset_jsonl(read_file(path), path); }

} // namespace lifegraph
