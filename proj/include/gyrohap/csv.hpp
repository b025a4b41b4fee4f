#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gyrohap::csv {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Strict double parse; throws ConfigError if `text` is not a full number.
double parse_double(std::string_view text, std::string_view context);

/// Strict integer parse with the same contract as parse_double.
long parse_long(std::string_view text, std::string_view context);

std::vector<std::string> split_line(std::string_view line, char delim = ',');

std::string_view trim(std::string_view s);

}  // namespace gyrohap::csv
