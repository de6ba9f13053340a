#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace windest::text {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

// Strict parse: the whole field must be consumed. Accepts "nan"/"inf".
double parse_double(std::string_view field);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view line, char sep);

}  // namespace windest::text
