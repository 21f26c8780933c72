#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qasdyn {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

// "a/b", or "a" when the denominator is one.
inline std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Integer ipow(const Integer& base, unsigned long exponent);
Rational rpow(const Rational& base, unsigned long exponent);

// Parses "12", "-3/4", "0.125", "1e-12", "2.5E3" exactly.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Fixed-point decimal rendering with `digits` digits after the point,
// truncated toward zero.
std::string to_decimal(const Rational& v, unsigned digits);

}  // namespace qasdyn
