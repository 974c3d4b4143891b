#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace fairdiv {

// All core computation is exact. cpp_rational keeps values in lowest terms
// with a positive denominator; there is no rounding anywhere in the library.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Lowest-terms text form: "p" when integral, otherwise "p/q".
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

/// Accepts "p" or "p/q" in decimal, optional leading '-' on the numerator.
/// Returns nullopt on any other shape (including a zero denominator).
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-') {
    negative = true;
    ++pos;
  }
  auto read_digits = [&](BigInt& out) -> bool {
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') return false;
    out = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      out = out * 10 + (text[pos] - '0');
      ++pos;
    }
    return true;
  };
  BigInt num;
  if (!read_digits(num)) return std::nullopt;
  BigInt den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (!read_digits(den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  if (negative) num = -num;
  return Rational(num, den);
}

}  // namespace fairdiv
