#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace hec {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. All solver arithmetic runs on this type; there is
// no floating-point path anywhere in the library.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return numerator(q); }
inline BigInt den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// floor/ceil by exact integer division, never through floating point.
inline BigInt floor_int(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt quo = n / d;
  if (n % d != 0 && n < 0) --quo;
  return quo;
}

inline BigInt ceil_int(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt quo = n / d;
  if (n % d != 0 && n > 0) ++quo;
  return quo;
}

inline long long to_ll(const BigInt& v) { return static_cast<long long>(v); }

// Serialized form is "p" for integers and "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline Rational parse_rational(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) bad();
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

}  // namespace hec
