#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace flextpu::csv {

std::string_view trim(std::string_view text);

// Splits on ',' and trims each field. No quoting: none of our formats need it.
std::vector<std::string> split_line(std::string_view line);

// Strict integer parse of a whole field. Throws ParseError tagged with `line`.
std::int64_t parse_int(std::string_view field, std::size_t line);
double parse_double(std::string_view field, std::size_t line);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace flextpu::csv
