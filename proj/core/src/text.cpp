#include "lifegraph/text.hpp"

#include <algorithm>

namespace lifegraph {

std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        unsigned char b0 = s[i];
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < n && (static_cast<unsigned char>(s[i + 1]) >> 6) == 0x2) {
            cp = static_cast<char32_t>((b0 & 0x1F) << 6 | (s[i + 1] & 0x3F));
            len = 2;
            if (cp < 0x80) cp = 0xFFFD;
        } else if ((b0 >> 4) == 0xE && i + 2 < n && (static_cast<unsigned char>(s[i + 1]) >> 6) == 0x2 &&
                   (static_cast<unsigned char>(s[i + 2]) >> 6) == 0x2) {
            cp = static_cast<char32_t>((b0 & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F));
            len = 3;
            if (cp < 0x800) cp = 0xFFFD;
        } else if ((b0 >> 3) == 0x1E && i + 3 < n && (static_cast<unsigned char>(s[i + 1]) >> 6) == 0x2 &&
                   (static_cast<unsigned char>(s[i + 2]) >> 6) == 0x2 &&
                   (static_cast<unsigned char>(s[i + 3]) >> 6) == 0x2) {
            cp = static_cast<char32_t>((b0 & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
                                       (s[i + 3] & 0x3F));
            len = 4;
            if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) utf8_append(out, cp);
    return out;
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
        case 0x0085: case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') || (cp >= '[' && cp <= '`') ||
               (cp >= '{' && cp <= '~');
    }
    // Common non-ASCII punctuation: Latin-1 marks, general punctuation block,
    // CJK brackets seen in the wild.
    switch (cp) {
        case 0x00A1: case 0x00A6: case 0x00A7: case 0x00AB: case 0x00B6:
        case 0x00B7: case 0x00BB: case 0x00BF:
            return true;
        default:
            return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
                   (cp >= 0x3001 && cp <= 0x3011);
    }
}

bool is_digit_cp(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_word_cp(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || is_digit_cp(cp) || cp == U'_';
    }
    return !is_space_cp(cp) && !is_punct_cp(cp);
}

namespace {

bool is_scheme_start_cp(char32_t cp) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

bool is_scheme_cp(char32_t cp) {
    return is_scheme_start_cp(cp) || is_digit_cp(cp) || cp == U'+' || cp == U'.' || cp == U'-';
}

// Matches scheme:// at position i, returning one past the end of the match
// (the rest of the token up to whitespace), or i when there is no match.
std::size_t match_scheme_url(const std::vector<char32_t>& cp, std::size_t i) {
    if (!is_scheme_start_cp(cp[i])) return i;
    std::size_t j = i;
    while (j < cp.size() && is_scheme_cp(cp[j])) ++j;
    if (j + 2 >= cp.size() || cp[j] != U':' || cp[j + 1] != U'/' || cp[j + 2] != U'/') return i;
    j += 3;
    while (j < cp.size() && !is_space_cp(cp[j])) ++j;
    return j;
}

// Matches www. at a token start, consuming the rest of the token.
std::size_t match_www_url(const std::vector<char32_t>& cp, std::size_t i, bool at_token_start) {
    if (!at_token_start) return i;
    if (i + 3 >= cp.size()) return i;
    auto low = [](char32_t c) { return c >= U'A' && c <= U'Z' ? c + 32 : c; };
    if (low(cp[i]) != U'w' || low(cp[i + 1]) != U'w' || low(cp[i + 2]) != U'w' || cp[i + 3] != U'.') return i;
    std::size_t j = i + 4;
    while (j < cp.size() && !is_space_cp(cp[j])) ++j;
    return j;
}

// Matches @token / #token: the marker plus one or more word codepoints.
std::size_t match_marked_token(const std::vector<char32_t>& cp, std::size_t i) {
    std::size_t j = i + 1;
    while (j < cp.size() && is_word_cp(cp[j])) ++j;
    return j > i + 1 ? j : i;
}

} // namespace

std::string preprocess(std::string_view text) {
    const std::vector<char32_t> cp = utf8_decode(text);
    std::vector<char32_t> kept;
    kept.reserve(cp.size());

    bool at_token_start = true;
    std::size_t i = 0;
    while (i < cp.size()) {
        std::size_t j = i;
        if (cp[i] == U'@' || cp[i] == U'#') {
            j = match_marked_token(cp, i);
        } else {
            j = match_www_url(cp, i, at_token_start);
            if (j == i) j = match_scheme_url(cp, i);
        }
        if (j > i) {
            // Stand in a space for the removed span so surviving fragments of
            // the same token never get spliced into a new token.
            kept.push_back(U' ');
            at_token_start = true;
            i = j;
            continue;
        }
        kept.push_back(cp[i]);
        at_token_start = is_space_cp(cp[i]);
        ++i;
    }

    // Collapse whitespace runs and trim.
    std::vector<char32_t> out;
    out.reserve(kept.size());
    bool pending_space = false;
    for (char32_t c : kept) {
        if (is_space_cp(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(U' ');
        pending_space = false;
        out.push_back(c);
    }
    return utf8_encode(out);
}

std::vector<std::string> tokenize(std::string_view text) {
    const std::vector<char32_t> cp = utf8_decode(text);
    std::vector<std::string> tokens;

    std::size_t i = 0;
    while (i < cp.size()) {
        while (i < cp.size() && is_space_cp(cp[i])) ++i;
        if (i >= cp.size()) break;
        std::size_t j = i;
        while (j < cp.size() && !is_space_cp(cp[j])) ++j;

        std::size_t lo = i, hi = j;
        std::vector<char32_t> leading;
        while (lo < hi && is_punct_cp(cp[lo])) leading.push_back(cp[lo++]);
        std::vector<char32_t> trailing;
        while (hi > lo && is_punct_cp(cp[hi - 1])) trailing.push_back(cp[--hi]);

        for (char32_t c : leading) tokens.push_back(utf8_encode({c}));
        if (lo < hi) tokens.push_back(utf8_encode(std::vector<char32_t>(cp.begin() + lo, cp.begin() + hi)));
        std::reverse(trailing.begin(), trailing.end());
        for (char32_t c : trailing) tokens.push_back(utf8_encode({c}));
        i = j;
    }
    return tokens;
}

} // namespace lifegraph
