#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lifegraph {

// Whole-file helpers. Throw IoError on failure; write_file is atomic enough
// for our purposes (truncate + write + flush).
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Splits into lines; accepts both \n and \r\n, drops a trailing empty line.
std::vector<std::string> split_lines(std::string_view text);

std::vector<std::string> split_on(std::string_view line, char sep);

// Locale-independent numeric formatting so emitted files are byte-stable.
std::string fmt_double(double v, int precision);   // fixed, e.g. %.6f
std::string fmt_general(double v, int precision);  // shortest-ish, %.Ng
std::string fmt_int(std::int64_t v);

double parse_double(std::string_view s, const std::string& context);
std::int64_t parse_int(std::string_view s, const std::string& context);

} // namespace lifegraph
