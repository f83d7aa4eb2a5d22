#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace nrsched {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline BigInt ceil_of(const Rational& r) {
  BigInt num = numerator_of(r), den = denominator_of(r);
  BigInt q = num / den;
  if (q * den != num && num > 0) ++q;
  return q;
}

inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Fixed-point rendering, rounded half away from zero.
inline std::string to_decimal(const Rational& r, int places) {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  BigInt num = numerator_of(r) * scale * 2;
  BigInt den = denominator_of(r) * 2;
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (num + den / 2) / den;
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative && scaled != 0 ? "-" + digits : digits;
}

/// Parses "p/q", an integer, or a finite decimal like "0.25" into an exact value.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) fail();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail();
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') fail();
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty()) fail();
    bool negative = !whole.empty() && whole[0] == '-';
    std::string_view whole_digits = (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) ? whole.substr(1) : whole;
    BigInt w = whole_digits.empty() ? BigInt(0) : parse_int(whole_digits);
    BigInt f = parse_int(frac);
    if (frac[0] == '-' || frac[0] == '+') fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value = Rational(w) + Rational(f, scale);
    return negative ? -value : value;
  }
  return Rational(parse_int(text));
}

}  // namespace nrsched
