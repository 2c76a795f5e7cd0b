#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <type_traits>

#include "cnoidal/errors.hpp"

namespace cnoidal {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", integers and plain decimals ("-0.1667", "2.5e-3") into an
/// exact rational. Decimal literals are taken at face value, not rounded
/// through binary floating point.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return UsageError("not a rational literal: '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt digits = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      any_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw fail();
  int exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw fail();
    ++pos;
    std::string rest(text.substr(pos));
    if (rest.empty()) throw fail();
    std::size_t used = 0;
    try {
      exponent = std::stoi(rest, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != rest.size()) throw fail();
  }
  exponent -= scale;
  Rational value(digits);
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    value *= ten_pow;
  } else {
    value /= ten_pow;
  }
  return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& q) {
  return q.str();
}

/// Converts an exact rational to a floating scalar (double or a
/// boost::multiprecision float type).
template <class T>
T to_scalar(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.convert_to<double>();
  } else {
    return T(boost::multiprecision::numerator(q)) / T(boost::multiprecision::denominator(q));
  }
}

}  // namespace cnoidal
