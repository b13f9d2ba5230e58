#pragma once

#include <string>
#include <vector>

namespace credit::csv {

/// 17 significant digits, enough to round-trip any double exactly.
std::string format_double(double x);

std::vector<std::string> split_line(const std::string& line);

/// Strict double parse; throws std::runtime_error on garbage.
double parse_double(const std::string& field);

std::int64_t parse_int(const std::string& field);

} // namespace credit::csv
