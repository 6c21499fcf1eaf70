#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lifegraph {

// Decodes UTF-8 into codepoints. Invalid bytes decode as U+FFFD, one
// replacement per bad byte, so the round-trip length is stable.
std::vector<char32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<char32_t>& cps);
void utf8_append(std::string& out, char32_t cp);

bool is_space_cp(char32_t cp);
bool is_punct_cp(char32_t cp);
bool is_digit_cp(char32_t cp);
// "Word" characters are what mention/hashtag tokens are made of:
// ASCII alphanumerics, underscore, and any non-space non-punct codepoint
// above U+007F.
bool is_word_cp(char32_t cp);

// Strips URLs (scheme:// or leading www.), #hashtags and @mentions, then
// collapses whitespace runs to single spaces and trims. Removal never splices
// the surviving pieces of a token together, which keeps the function
// idempotent.
std::string preprocess(std::string_view text);

// Splits on Unicode whitespace, then peels leading/trailing punctuation
// codepoints off each chunk as single-character tokens.
std::vector<std::string> tokenize(std::string_view text);

} // namespace lifegraph
