#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "mg/error.hpp"

namespace mg {

/// Exact arbitrary-precision rational. Kept canonical (gcd 1, positive
/// denominator) by the underlying type; every geometric comparison in this
/// project is decided on such values, never on floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Parses "123", "-4" or "7/2". Denominator must be nonzero.
inline Rat parse_rat(const std::string& text) {
  auto bad = [&]() { return Error(ErrorCode::BadFile, "bad rational '" + text + "'"); };
  std::size_t slash = text.find('/');
  auto parse_int = [&](const std::string& part) -> Int {
    if (part.empty()) throw bad();
    std::size_t i = part[0] == '-' || part[0] == '+' ? 1 : 0;
    if (i == part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
    return Int(part);
  };
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw bad();
  return Rat(num, den);
}

/// If x is the square of a rational, stores that (nonnegative) root and
/// returns true. Exact: numerator and denominator must both be perfect
/// squares in canonical form.
inline bool rational_sqrt(const Rat& x, Rat& out) {
  if (x < 0) return false;
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  Int rnum = boost::multiprecision::sqrt(num);
  Int rden = boost::multiprecision::sqrt(den);
  if (rnum * rnum != num || rden * rden != den) return false;
  out = Rat(rnum, rden);
  return true;
}

}  // namespace mg
