#pragma once

// Exact rational arithmetic helpers built on Boost.Multiprecision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "ea_bounds/errors.hpp"

namespace ea {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw GuardError("integer value " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

/// Least common denominator of a list of rationals.
inline BigInt common_denominator(std::span<const Rational> values) {
  BigInt d = 1;
  for (const auto& v : values) d = lcm(d, den(v));
  return d;
}

/// "p/q", or "p" when the denominator is 1. Always reduced.
inline std::string to_fraction_string(const Rational& r) {
  if (is_integer(r)) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

/// Parses an exact rational: "3", "-1/2", "+7/4" or a finite decimal such as "0.25".
/// Exponent notation is rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ConfigError("cannot parse exact rational from '" + std::string(text) + "'");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) return fail();

  auto parse_int = [&](std::string_view t) -> BigInt {
    std::size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    if (i == t.size()) fail();
    BigInt v = 0;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) fail();
      v = v * 10 + (t[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt p = parse_int(std::string_view(s).substr(0, slash));
    std::string_view q_text = std::string_view(s).substr(slash + 1);
    if (q_text.empty() || q_text[0] == '+' || q_text[0] == '-') fail();
    BigInt q = parse_int(q_text);
    if (q == 0) throw ConfigError("zero denominator in '" + s + "'");
    return Rational(p, q);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty() || digits == "-" || digits == "+") fail();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_len));
    return Rational(parse_int(digits), scale);
  }
  return Rational(parse_int(s));
}

/// Decimal rendering with round-half-even at `digits` fractional digits.
/// Trailing zeros are trimmed only when the rendering is exact.
struct Decimal {
  std::string text;
  bool exact = false;
};

inline Decimal to_decimal(const Rational& r, int digits = 6) {
  if (digits < 0) throw ConfigError("decimal precision must be non-negative");
  BigInt n = num(r);
  const BigInt d = den(r);
  const bool negative = n < 0;
  if (negative) n = -n;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  BigInt q;
  BigInt rem;
  boost::multiprecision::divide_qr(BigInt(n * scale), d, q, rem);
  const bool exact = rem == 0;
  const BigInt twice = rem * 2;
  if (twice > d || (twice == d && boost::multiprecision::bit_test(q, 0))) ++q;

  std::string body = q.str();
  if (body.size() <= static_cast<std::size_t>(digits)) {
    body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  }
  std::string int_part = body.substr(0, body.size() - static_cast<std::size_t>(digits));
  std::string frac_part = body.substr(body.size() - static_cast<std::size_t>(digits));
  if (exact) {
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  }
  std::string out = (negative && q != 0) ? "-" : "";
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return {out, exact};
}

}  // namespace ea
