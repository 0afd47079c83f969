#ifndef SCHEMEFORGE_RATIONAL_HPP
#define SCHEMEFORGE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "schemeforge/errors.hpp"

namespace schemeforge {

// Arbitrary-precision integers and rationals. cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the canonical
// form the scalar codec requires.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline int sign_of(const Rational& r) { return r.sign(); }

inline int sign_of(const Integer& v) { return v.sign(); }

// Renders "p" for integers and "p/q" otherwise; parse_rational reverses it.
inline std::string to_string(const Rational& r) {
  Integer num = numerator(r);
  Integer den = denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

inline Integer parse_integer(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("bare sign is not an integer");
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw ParseError("invalid integer '" + std::string(text) + "'");
  return Integer(std::string(text));
}

inline Rational parse_rational(std::string_view text) {
  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den <= 0) throw ParseError("denominator must be positive in '" +
                                 std::string(text) + "'");
  return Rational(num, den);
}

inline Integer binomial(long long v, long long k) {
  if (k < 0 || k > v) return 0;
  Integer result = 1;
  for (long long i = 0; i < k; ++i) {
    result *= v - i;
    result /= i + 1;
  }
  return result;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

}  // namespace schemeforge

#endif
