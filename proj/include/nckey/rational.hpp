#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace nckey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a", "-a" or "a/b".
Rational parse_rational(const std::string& text);

inline Rational floor_rational(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt fl = n / d;
  if (n < 0 && fl * d != n) fl -= 1;
  return Rational(fl);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace nckey
