#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace so3mes::cli {

/// %.12g-style rendering that ignores the C locale. Negative zero prints as 0.
std::string format_number(double x);

/// Rounds x to the value format_number would print.
double round_to_printed(double x);

/// Accepts a plain number or "<k>pi/omega" (k optional, e.g. "pi/omega", "2pi/omega").
std::optional<double> parse_time_token(std::string_view token, double omega);

std::uint64_t fnv1a64(std::string_view bytes);
std::string checksum_hex(std::string_view bytes);

}  // namespace so3mes::cli
