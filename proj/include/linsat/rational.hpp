#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace linsat {

/// Exact ratio type for satisfaction fractions and the closed-form laws.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

inline double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

/// Parses "a/b", "a" or a finite decimal such as "0.9".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::int64_t den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  bool negative = !text.empty() && text[0] == '-';
  std::int64_t num = digits.empty() || digits == "-" ? 0 : std::stoll(digits);
  if (negative && num > 0) num = -num;
  return Rational(num, den);
}

}  // namespace linsat
