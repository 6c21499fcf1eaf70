#include "lifegraph/features.hpp"

#include <algorithm>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/text.hpp"

namespace lifegraph {

ClusterLexicon parse_lexicon_tsv(const std::string& contents, const std::string& origin, const std::string& name) {
    ClusterLexicon lex;
    lex.name = name;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(contents)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_on(line, '\t');
        if (fields.size() != 2 || fields[0].empty()) {
            throw DataError("expected 'token<TAB>cluster_id' at " + origin + ":" +
                            fmt_int(static_cast<std::int64_t>(line_no)));
        }
        if (!lex.clusters.emplace(fields[0], fields[1]).second) {
            throw DataError("duplicate token '" + fields[0] + "' in lexicon " + origin);
        }
    }
    return lex;
}

ClusterLexicon read_lexicon_tsv(const std::string& path, const std::string& name) {
    return parse_lexicon_tsv(read_file(path), path, name);
}

namespace {

bool is_letter_cp(char32_t cp) {
    if (cp < 0x80) return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
    return is_word_cp(cp) && !is_digit_cp(cp);
}

bool is_upper_cp(char32_t cp) { return cp >= U'A' && cp <= U'Z'; }
bool is_lower_cp(char32_t cp) { return cp >= U'a' && cp <= U'z'; }

char32_t fold_case(char32_t cp) { return is_upper_cp(cp) ? cp + 32 : cp; }

void add(FeatureVector& fv, std::string key) { fv[std::move(key)] = 1.0; }

} // namespace

FeatureVector extract_features(const std::string& text, const std::vector<ClusterLexicon>& lexicons) {
    FeatureVector fv;
    const std::vector<std::string> tokens = tokenize(text);
    if (tokens.empty()) return fv;

    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
        const std::string& tok = tokens[ti];
        add(fv, "w=" + tok);
        if (ti + 1 < tokens.size()) add(fv, "w2=" + tok + " " + tokens[ti + 1]);

        const std::vector<char32_t> cps = utf8_decode(tok);
        const std::size_t L = cps.size();

        for (std::size_t n = 2; n <= 4 && n <= L; ++n) {
            for (std::size_t i = 0; i + n <= L; ++i) {
                std::string gram;
                for (std::size_t k = 0; k < n; ++k) utf8_append(gram, cps[i + k]);
                add(fv, "c" + std::to_string(n) + "=" + gram);
            }
        }
        for (std::size_t n = 1; n <= 4 && n <= L; ++n) {
            std::string pre, suf;
            for (std::size_t k = 0; k < n; ++k) utf8_append(pre, cps[k]);
            for (std::size_t k = L - n; k < L; ++k) utf8_append(suf, cps[k]);
            add(fv, "p" + std::to_string(n) + "=" + pre);
            add(fv, "s" + std::to_string(n) + "=" + suf);
        }

        bool has_digit = false, has_letter = false, all_caps = true;
        std::map<char32_t, int> letter_counts;
        for (char32_t c : cps) {
            if (is_digit_cp(c)) has_digit = true;
            if (is_letter_cp(c)) {
                has_letter = true;
                ++letter_counts[fold_case(c)];
                if (is_lower_cp(c)) all_caps = false;
            }
        }
        if (has_digit) add(fv, "sh:digit");
        if (has_letter && all_caps && L >= 2) add(fv, "sh:caps");
        for (const auto& [cp, count] : letter_counts) {
            if (count >= 3) {
                add(fv, "sh:elong");
                break;
            }
        }

        for (const auto& lex : lexicons) {
            auto it = lex.clusters.find(tok);
            if (it != lex.clusters.end()) {
                add(fv, lex.name.empty() ? "clus:" + it->second : "clus:" + lex.name + ":" + it->second);
            }
        }
    }

    const std::vector<char32_t> all = utf8_decode(text);
    std::size_t punct = 0, total = 0;
    for (char32_t c : all) {
        if (is_space_cp(c)) continue;
        ++total;
        if (is_punct_cp(c)) ++punct;
    }
    if (total > 0) fv["punct_density"] = static_cast<double>(punct) / static_cast<double>(total);
    return fv;
}

} // namespace lifegraph
