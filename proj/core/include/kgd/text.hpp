#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace kgd {

/// Shortest decimal representation that parses back to the same double
/// ("0.5" -> 0.5, 2.0 -> "2", infinities -> "inf"/"-inf").
std::string format_double(double v);

/// Strict full-token double parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view token);

std::optional<long> parse_long(std::string_view token);

}  // namespace kgd
