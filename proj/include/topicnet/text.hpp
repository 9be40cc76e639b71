#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace topicnet {

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

/// One CSV record (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv(std::string_view line);
/// Quotes a field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Shortest lossless form, 17 significant digits.
std::string format_exact(double v);
/// Two decimals, for human-facing ranking tables.
std::string format_2dp(double v);

std::string xml_escape(std::string_view s);

}  // namespace topicnet
