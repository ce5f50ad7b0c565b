#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "awfair/errors.hpp"

namespace awfair {

/// Exact rational number. Every quantity in the library (valuations, shares,
/// utilities, welfare, deviation gaps) is one of these; nothing is rounded.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Sign of p/q - r/s computed as p*s vs r*q, i.e. without forming the quotients.
/// Used for every ratio comparison x_i/y_i vs x_j/y_j.
inline int compare_ratios(const Rational& p, const Rational& q, const Rational& r,
                          const Rational& s) {
  const Rational lhs = p * s;
  const Rational rhs = r * q;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "num", "num/den", or "-num/den". Whitespace around the tokens is not
/// accepted; callers trim first.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                               : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  const Integer d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  return Rational(Integer{n}, d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "5/7 (≈0.7143)"; integers print without the approximation.
inline std::string to_human(const Rational& r, int digits = 4) {
  if (denominator_of(r) == 1) return r.str();
  std::ostringstream os;
  os << r.str() << " (≈" << std::fixed << std::setprecision(digits) << to_double(r) << ')';
  return os.str();
}

}  // namespace awfair
