#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esids {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

// Strict base-10 unsigned parse: digits only, whole string, no overflow.
std::optional<std::uint64_t> parse_u64(std::string_view text);

// Split on a delimiter; keeps empty fields.
std::vector<std::string_view> split(std::string_view line, char delim);

}  // namespace esids
