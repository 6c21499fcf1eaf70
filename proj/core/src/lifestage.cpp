#include "lifegraph/lifestage.hpp"

#include <algorithm>
#include <set>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"

namespace lifegraph {

const char* to_string(LifeStage stage) {
    switch (stage) {
        case LifeStage::young: return "young";
        case LifeStage::adult: return "adult";
        case LifeStage::underdetermined: return "underdetermined";
    }
    return "underdetermined";
}

LifeStage lifestage_from_string(const std::string& s) {
    if (s == "young") return LifeStage::young;
    if (s == "adult") return LifeStage::adult;
    if (s == "underdetermined") return LifeStage::underdetermined;
    throw DataError("unknown life stage label '" + s + "'");
}

void ThresholdConfig::validate() const {
    if (!(0.0 <= lower && lower <= upper && upper <= 1.0)) {
        throw UsageError("thresholds must satisfy 0 <= lower <= upper <= 1");
    }
}

LifeStage label_for_fraction(double fraction, const ThresholdConfig& thresholds) {
    if (fraction > thresholds.upper) return LifeStage::young;
    if (fraction < thresholds.lower) return LifeStage::adult;
    return LifeStage::underdetermined;
}

UserLifeStage classify_user(const std::string& user_id, const std::vector<TweetPrediction>& predictions,
                            const ThresholdConfig& thresholds) {
    thresholds.validate();
    if (predictions.empty()) throw DataError("user '" + user_id + "' has zero predictions");

    double fraction = 0.0;
    if (thresholds.use_mean_probability) {
        for (const auto& p : predictions) fraction += p.score;
        fraction /= static_cast<double>(predictions.size());
    } else {
        std::size_t young = 0;
        for (const auto& p : predictions) {
            if (is_positive_label(p.label)) ++young;
        }
        fraction = static_cast<double>(young) / static_cast<double>(predictions.size());
    }
    return {user_id, fraction, label_for_fraction(fraction, thresholds), predictions.size()};
}

CorpusLifeStages classify_corpus(const PredictionsByUser& predictions, const ThresholdConfig& thresholds) {
    CorpusLifeStages out;
    out.users.reserve(predictions.size());
    for (const auto& [uid, preds] : predictions) {
        UserLifeStage u = classify_user(uid, preds, thresholds);
        switch (u.label) {
            case LifeStage::young: ++out.counts.young; break;
            case LifeStage::adult: ++out.counts.adult; break;
            case LifeStage::underdetermined: ++out.counts.underdetermined; break;
        }
        out.users.push_back(std::move(u));
    }
    return out;
}

namespace {

std::size_t stage_index(LifeStage s) {
    switch (s) {
        case LifeStage::young: return 0;
        case LifeStage::adult: return 1;
        case LifeStage::underdetermined: return 2;
    }
    return 2;
}

const char* kStageNames[3] = {"young", "adult", "underdetermined"};

} // namespace

std::size_t TransitionMatrix::total() const {
    std::size_t t = 0;
    for (const auto& row : counts) {
        for (std::size_t c : row) t += c;
    }
    return t;
}

std::size_t TransitionMatrix::changed() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j) c += counts[i][j];
        }
    }
    return c;
}

double TransitionMatrix::changed_fraction() const {
    const std::size_t t = total();
    return t == 0 ? 0.0 : static_cast<double>(changed()) / static_cast<double>(t);
}

std::array<std::size_t, 3> TransitionMatrix::row_sums() const {
    std::array<std::size_t, 3> sums{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) sums[i] += counts[i][j];
    }
    return sums;
}

std::array<std::size_t, 3> TransitionMatrix::col_sums() const {
    std::array<std::size_t, 3> sums{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) sums[j] += counts[i][j];
    }
    return sums;
}

TransitionMatrix compare_methods(const std::map<std::string, LifeStage>& labels_old,
                                 const std::map<std::string, LifeStage>& labels_new) {
    std::vector<std::string> only_old, only_new;
    for (const auto& [uid, _] : labels_old) {
        if (!labels_new.count(uid)) only_old.push_back(uid);
    }
    for (const auto& [uid, _] : labels_new) {
        if (!labels_old.count(uid)) only_new.push_back(uid);
    }
    if (!only_old.empty() || !only_new.empty()) {
        std::string msg = "user sets differ;";
        if (!only_old.empty()) {
            msg += " only in old:";
            for (const auto& u : only_old) msg += " " + u;
        }
        if (!only_new.empty()) {
            msg += " only in new:";
            for (const auto& u : only_new) msg += " " + u;
        }
        throw DataError(msg);
    }

    TransitionMatrix m;
    for (const auto& [uid, old_label] : labels_old) {
        ++m.counts[stage_index(old_label)][stage_index(labels_new.at(uid))];
    }
    return m;
}

std::string lifestages_to_csv(const CorpusLifeStages& stages) {
    std::string out = "user_id,young_fraction,n_tweets,label\n";
    for (const auto& u : stages.users) {
        out += u.user_id;
        out += ',';
        out += fmt_double(u.young_fraction, 6);
        out += ',';
        out += fmt_int(static_cast<std::int64_t>(u.n_tweets));
        out += ',';
        out += to_string(u.label);
        out += '\n';
    }
    return out;
}

CorpusLifeStages parse_lifestages_csv(const std::string& contents, const std::string& origin) {
    CorpusLifeStages out;
    auto lines = split_lines(contents);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (i == 0 && lines[i].rfind("user_id,", 0) == 0) continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(i + 1));
        auto fields = split_on(lines[i], ',');
        if (fields.size() != 4) throw DataError("expected 4 comma-separated fields at " + where);
        UserLifeStage u;
        u.user_id = fields[0];
        u.young_fraction = parse_double(fields[1], where);
        u.n_tweets = static_cast<std::size_t>(parse_int(fields[2], where));
        u.label = lifestage_from_string(fields[3]);
        if (!seen.insert(u.user_id).second) throw DataError("duplicate user '" + u.user_id + "' at " + where);
        switch (u.label) {
            case LifeStage::young: ++out.counts.young; break;
            case LifeStage::adult: ++out.counts.adult; break;
            case LifeStage::underdetermined: ++out.counts.underdetermined; break;
        }
        out.users.push_back(std::move(u));
    }
    std::sort(out.users.begin(), out.users.end(),
              [](const UserLifeStage& a, const UserLifeStage& b) { return a.user_id < b.user_id; });
    return out;
}

CorpusLifeStages read_lifestages_csv(const std::string& path) {
    return parse_lifestages_csv(read_file(path), path);
}

std::string transitions_to_csv(const TransitionMatrix& m) {
    std::string out = "old_label,new_label,count\n";
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            out += std::string(kStageNames[i]) + "," + kStageNames[j] + "," +
                   fmt_int(static_cast<std::int64_t>(m.counts[i][j])) + "\n";
        }
    }
    out += "changed_fraction,," + fmt_double(m.changed_fraction(), 6) + "\n";
    return out;
}

} // namespace lifegraph
