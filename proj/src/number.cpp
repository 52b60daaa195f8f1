#include "svgx/number.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

namespace svgx {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string format_number(double value) {
  if (value == 0.0 || !std::isfinite(value)) return "0";
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) return "0";
  std::string out(buf.data(), end);
  // to_chars shortest-fixed never emits trailing fraction zeros, but it may
  // emit "-0.0..." style strings for tiny negatives that still print as zero.
  if (out == "-0") return "0";
  return out;
}

double round_decimal(double value, int places) {
  if (places < 0 || !std::isfinite(value) || value == 0.0) return value;
  std::string digits = format_number(value);
  bool negative = false;
  if (!digits.empty() && digits[0] == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  const auto dot = digits.find('.');
  if (dot == std::string::npos) return value;
  const std::size_t frac_len = digits.size() - dot - 1;
  if (frac_len <= static_cast<std::size_t>(places)) return value;

  // Keep `places` fraction digits; inspect the next one for the rounding
  // direction. Everything is done on the decimal string.
  std::string kept = digits.substr(0, dot) + digits.substr(dot + 1, places);
  const bool round_up = digits[dot + 1 + places] >= '5';
  if (round_up) {
    int i = static_cast<int>(kept.size()) - 1;
    while (i >= 0) {
      if (kept[i] == '9') {
        kept[i] = '0';
        --i;
      } else {
        ++kept[i];
        break;
      }
    }
    if (i < 0) kept.insert(kept.begin(), '1');
  }
  const std::size_t int_len = kept.size() - static_cast<std::size_t>(places);
  std::string text = kept.substr(0, int_len);
  if (places > 0) text += "." + kept.substr(int_len);
  double result = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), result);
  if (result == 0.0) return 0.0;
  return negative ? -result : result;
}

std::optional<double> parse_number(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && is_space(text[pos])) ++pos;
  auto start = pos;
  auto value = scan_number(text, pos);
  if (!value || pos == start) return std::nullopt;
  while (pos < text.size() && is_space(text[pos])) ++pos;
  if (pos != text.size()) return std::nullopt;
  return value;
}

void skip_separators(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
  if (pos < text.size() && text[pos] == ',') {
    ++pos;
    while (pos < text.size() && is_space(text[pos])) ++pos;
  }
}

std::optional<double> scan_number(std::string_view text, std::size_t& pos) {
  std::size_t p = pos;
  while (p < text.size() && is_space(text[p])) ++p;
  const std::size_t begin = p;
  if (p < text.size() && (text[p] == '+' || text[p] == '-')) ++p;
  std::size_t int_digits = 0;
  while (p < text.size() && is_digit(text[p])) {
    ++p;
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (p < text.size() && text[p] == '.') {
    std::size_t q = p + 1;
    while (q < text.size() && is_digit(text[q])) {
      ++q;
      ++frac_digits;
    }
    if (frac_digits > 0 || int_digits > 0) p = q;
  }
  if (int_digits == 0 && frac_digits == 0) return std::nullopt;
  // Exponent only when followed by at least one digit ("1em" is not 1e...).
  if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
    std::size_t q = p + 1;
    if (q < text.size() && (text[q] == '+' || text[q] == '-')) ++q;
    if (q < text.size() && is_digit(text[q])) {
      while (q < text.size() && is_digit(text[q])) ++q;
      p = q;
    }
  }
  std::string_view token = text.substr(begin, p - begin);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  pos = p;
  return value;
}

}  // namespace svgx
