#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sbrl {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);
/// Parses a complete decimal token; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace sbrl
