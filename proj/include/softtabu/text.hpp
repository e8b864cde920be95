#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace softtabu {

// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

std::string_view trim(std::string_view s);

// Splits on any run of the given delimiter characters; empty tokens are dropped.
std::vector<std::string_view> split(std::string_view s, std::string_view delims = " \t\r");

// Full-token numeric parses. Return false on trailing garbage or overflow.
bool parse_double(std::string_view s, double& out);
bool parse_int64(std::string_view s, long long& out);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace softtabu
