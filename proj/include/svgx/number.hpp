#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace svgx {

/// Shortest fixed-notation text that parses back to exactly `value`.
/// No exponent, no leading '+', no trailing zeros, "-0" prints as "0".
std::string format_number(double value);

/// Rounds the decimal representation of `value` to `places` fraction digits,
/// half away from zero. Works on the shortest round-trip digits rather than
/// the binary value, so 1.005 rounds to 1.01.
double round_decimal(double value, int places);

/// Strict parse of a complete SVG number token (sign, digits, fraction,
/// exponent). Returns nullopt on trailing garbage or an empty string.
std::optional<double> parse_number(std::string_view text);

/// Scans one SVG number starting at `pos`, advancing `pos` past it.
/// Leading whitespace and one comma separator are skipped first.
std::optional<double> scan_number(std::string_view text, std::size_t& pos);

void skip_separators(std::string_view text, std::size_t& pos);

}  // namespace svgx
