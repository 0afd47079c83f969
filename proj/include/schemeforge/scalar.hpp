#ifndef SCHEMEFORGE_SCALAR_HPP
#define SCHEMEFORGE_SCALAR_HPP

#include <string>
#include <string_view>

#include "schemeforge/rational.hpp"

namespace schemeforge {

// Exact element of Q or of a single real quadratic extension Q(sqrt(d)).
// Canonical form: value = rat + rad*sqrt(disc), where disc is squarefree and
// at least 2 whenever rad is nonzero, and disc == 0 whenever rad == 0.
// Operands with distinct nonzero discriminants do not mix; the arithmetic
// refuses loudly instead of building a composite field.
class Scalar {
public:
  Scalar() : disc_(0) {}
  Scalar(long long value) : rat_(value), disc_(0) {}
  Scalar(const Integer& value) : rat_(value), disc_(0) {}
  Scalar(const Rational& value) : rat_(value), disc_(0) {}
  Scalar(const Rational& rat, const Rational& rad, long long disc)
      : rat_(rat), rad_(rad), disc_(disc) {
    canonicalize();
  }

  const Rational& rational_part() const { return rat_; }
  const Rational& radical_part() const { return rad_; }
  long long discriminant() const { return disc_; }

  bool is_zero() const { return rad_ == 0 && rat_ == 0; }
  bool is_rational() const { return rad_ == 0; }
  bool is_whole() const { return rad_ == 0 && denominator(rat_) == 1; }

  Rational as_rational() const {
    if (rad_ != 0) throw Error(ErrorCategory::MathDomain,
                               "scalar is irrational: " + debug());
    return rat_;
  }

  Integer as_whole() const {
    Rational r = as_rational();
    if (!is_integer(r)) throw Error(ErrorCategory::MathDomain,
                                    "scalar is not an integer: " + debug());
    return numerator(r);
  }

  Scalar conjugate() const { return Scalar(rat_, -rad_, disc_); }

  // Sign in the real embedding with sqrt(disc) > 0.
  int sign() const {
    if (rad_ == 0) return sign_of(rat_);
    int srat = sign_of(rat_);
    int srad = sign_of(rad_);
    if (srat == 0) return srad;
    if (srat == srad) return srat;
    // Opposite signs: compare |rat| with |rad|*sqrt(disc) by squaring.
    Rational t = rat_ * rat_ - rad_ * rad_ * disc_;
    int st = sign_of(t);
    if (st == 0) return 0;
    return st > 0 ? srat : srad;
  }

private:
  Rational rat_;
  Rational rad_;
  long long disc_;

  std::string debug() const;

  void canonicalize() {
    if (disc_ < 0)
      throw Error(ErrorCategory::MathDomain, "negative discriminant");
    if (rad_ == 0 || disc_ == 0) {
      rad_ = 0;
      disc_ = 0;
      return;
    }
    long long d = disc_;
    long long square = 1;
    for (long long f = 2; f * f <= d; ++f) {
      while (d % (f * f) == 0) {
        d /= f * f;
        square *= f;
      }
    }
    disc_ = d;
    if (square != 1) rad_ *= square;
    if (disc_ == 1) {
      rat_ += rad_;
      rad_ = 0;
      disc_ = 0;
    }
  }

  friend long long merged_discriminant(const Scalar& a, const Scalar& b);
};

inline long long merged_discriminant(const Scalar& a, const Scalar& b) {
  if (a.rad_ == 0) return b.disc_;
  if (b.rad_ == 0) return a.disc_;
  if (a.disc_ != b.disc_)
    throw MixedDiscriminants("sqrt(" + std::to_string(a.disc_) +
                             ") does not mix with sqrt(" +
                             std::to_string(b.disc_) + ")");
  return a.disc_;
}

inline Scalar add(const Scalar& a, const Scalar& b) {
  long long d = merged_discriminant(a, b);
  return Scalar(a.rational_part() + b.rational_part(),
                a.radical_part() + b.radical_part(), d);
}

inline Scalar sub(const Scalar& a, const Scalar& b) {
  long long d = merged_discriminant(a, b);
  return Scalar(a.rational_part() - b.rational_part(),
                a.radical_part() - b.radical_part(), d);
}

inline Scalar neg(const Scalar& a) {
  return Scalar(-a.rational_part(), -a.radical_part(), a.discriminant());
}

inline Scalar mul(const Scalar& a, const Scalar& b) {
  long long d = merged_discriminant(a, b);
  Rational rat = a.rational_part() * b.rational_part() +
                 a.radical_part() * b.radical_part() * d;
  Rational rad = a.rational_part() * b.radical_part() +
                 a.radical_part() * b.rational_part();
  return Scalar(rat, rad, d);
}

inline Scalar div(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DivisionByZero("exact division by zero");
  long long d = merged_discriminant(a, b);
  if (b.is_rational()) {
    return Scalar(a.rational_part() / b.rational_part(),
                  a.radical_part() / b.rational_part(), d);
  }
  // Multiply through by the conjugate; the norm of a nonzero element of a
  // real quadratic field is a nonzero rational.
  Rational norm = b.rational_part() * b.rational_part() -
                  b.radical_part() * b.radical_part() * b.discriminant();
  Scalar numerator_part = mul(a, b.conjugate());
  return Scalar(numerator_part.rational_part() / norm,
                numerator_part.radical_part() / norm, d);
}

inline Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
inline Scalar operator-(const Scalar& a, const Scalar& b) { return sub(a, b); }
inline Scalar operator-(const Scalar& a) { return neg(a); }
inline Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
inline Scalar operator/(const Scalar& a, const Scalar& b) { return div(a, b); }
inline Scalar& operator+=(Scalar& a, const Scalar& b) { return a = add(a, b); }
inline Scalar& operator-=(Scalar& a, const Scalar& b) { return a = sub(a, b); }
inline Scalar& operator*=(Scalar& a, const Scalar& b) { return a = mul(a, b); }
inline Scalar& operator/=(Scalar& a, const Scalar& b) { return a = div(a, b); }

// Total order consistent with the real embedding. Throws MixedDiscriminants
// when neither side is rational and the discriminants differ.
inline int compare(const Scalar& a, const Scalar& b) {
  return sub(a, b).sign();
}

inline bool operator==(const Scalar& a, const Scalar& b) {
  return a.discriminant() == b.discriminant() &&
         a.rational_part() == b.rational_part() &&
         a.radical_part() == b.radical_part();
}
inline bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
inline bool operator<(const Scalar& a, const Scalar& b) {
  return compare(a, b) < 0;
}
inline bool operator<=(const Scalar& a, const Scalar& b) {
  return compare(a, b) <= 0;
}
inline bool operator>(const Scalar& a, const Scalar& b) {
  return compare(a, b) > 0;
}
inline bool operator>=(const Scalar& a, const Scalar& b) {
  return compare(a, b) >= 0;
}

// sqrt(n) for a nonnegative integer n, as c*sqrt(d) with d squarefree.
inline Scalar sqrt_integer(const Integer& n) {
  if (n < 0) throw OutOfRange("sqrt_integer of a negative integer");
  if (n == 0) return Scalar();
  if (n > Integer(1) << 62)
    throw TooLarge("sqrt_integer input exceeds the supported range");
  long long value = n.convert_to<long long>();
  long long square = 1;
  long long d = value;
  for (long long f = 2; f * f <= d; ++f) {
    while (d % (f * f) == 0) {
      d /= f * f;
      square *= f;
    }
  }
  if (d == 1) return Scalar(Integer(square));
  return Scalar(Rational(0), Rational(square), d);
}

inline Scalar sqrt_integer(long long n) { return sqrt_integer(Integer(n)); }

// Text codec, bit-exact: "p" or "p/q" for rationals and
// "a/b+c/e*sqrt(d)" (canonical signs, lowest terms) for quadratic elements.
inline std::string to_string(const Scalar& s) {
  if (s.is_rational()) return to_string(s.rational_part());
  std::string text = to_string(s.rational_part());
  Rational coeff = s.radical_part();
  if (coeff > 0) {
    text += "+";
  } else {
    text += "-";
    coeff = -coeff;
  }
  text += to_string(coeff) + "*sqrt(" + std::to_string(s.discriminant()) + ")";
  return text;
}

inline std::string Scalar::debug() const { return to_string(*this); }

inline Scalar parse_scalar(std::string_view text) {
  std::size_t mark = text.find("*sqrt(");
  if (mark == std::string_view::npos) return Scalar(parse_rational(text));
  if (text.empty() || text.back() != ')')
    throw ParseError("unterminated sqrt in '" + std::string(text) + "'");
  std::string_view disc_text = text.substr(mark + 6, text.size() - mark - 7);
  Integer disc = parse_integer(disc_text);
  if (disc <= 0 || disc > Integer(1) << 62)
    throw ParseError("discriminant out of range in '" + std::string(text) + "'");
  std::string_view head = text.substr(0, mark);
  // Split "a/b+c/e" at the last sign that follows a digit.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] >= '0' &&
        head[i - 1] <= '9') {
      split = i;
      break;
    }
  }
  Rational rat = 0;
  Rational rad;
  if (split == std::string_view::npos) {
    rad = parse_rational(head);
  } else {
    rat = parse_rational(head.substr(0, split));
    rad = parse_rational(head.substr(split + 1));
    if (head[split] == '-') rad = -rad;
  }
  return Scalar(rat, rad, disc.convert_to<long long>());
}

}  // namespace schemeforge

#endif
