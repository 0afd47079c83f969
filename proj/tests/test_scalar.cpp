#include <catch2/catch_amalgamated.hpp>

#include "schemeforge/scalar.hpp"

using namespace schemeforge;

namespace {
Scalar rat(long long num, long long den) { return Scalar(Rational(num, den)); }
}  // namespace

TEST_CASE("rational arithmetic and rendering") {
  CHECK(to_string(Scalar(0)) == "0");
  CHECK(to_string(Scalar(-7)) == "-7");
  CHECK(to_string(rat(2, 4)) == "1/2");
  CHECK(to_string(rat(-2, 4)) == "-1/2");
  CHECK(to_string(add(parse_scalar("2/3"), parse_scalar("1/6"))) == "5/6");
  CHECK(to_string(mul(rat(3, 7), rat(7, 3))) == "1");
  CHECK(to_string(div(Scalar(1), Scalar(-8))) == "-1/8");
  CHECK(Scalar(5).is_whole());
  CHECK(Scalar(5).as_whole() == 5);
  CHECK_FALSE(rat(1, 2).is_whole());
}

TEST_CASE("quadratic arithmetic stays exact") {
  Scalar a = parse_scalar("1+1*sqrt(6)");
  Scalar b = parse_scalar("1-1*sqrt(6)");
  CHECK(to_string(mul(a, b)) == "-5");
  CHECK(to_string(add(a, b)) == "2");
  CHECK(to_string(sub(a, b)) == "0+2*sqrt(6)");
  CHECK(to_string(a.conjugate()) == "1-1*sqrt(6)");
  CHECK(to_string(div(parse_scalar("1+2*sqrt(2)"),
                      parse_scalar("1-1*sqrt(2)"))) == "-5-3*sqrt(2)");
  CHECK(to_string(neg(a)) == "-1-1*sqrt(6)");
  Scalar c = parse_scalar("1/2+3/2*sqrt(5)");
  CHECK(to_string(mul(c, c)) == "23/2+3/2*sqrt(5)");
}

TEST_CASE("radical parts canonicalize to squarefree discriminants") {
  Scalar s(Rational(0), Rational(1), 8);
  CHECK(s.discriminant() == 2);
  CHECK(to_string(s) == "0+2*sqrt(2)");
  Scalar t(Rational(0), Rational(1), 9);
  CHECK(t.is_rational());
  CHECK(to_string(t) == "3");
  CHECK(to_string(sqrt_integer(Integer(24))) == "0+2*sqrt(6)");
  CHECK(to_string(sqrt_integer(Integer(2025))) == "45");
  CHECK(to_string(sqrt_integer(Integer(16))) == "4");
  CHECK(to_string(sqrt_integer(Integer(0))) == "0");
  CHECK(to_string(sqrt_integer(Integer(1))) == "1");
}

TEST_CASE("sign and comparison work through the radical") {
  CHECK(compare(parse_scalar("1+1*sqrt(2)"), parse_scalar("5/2")) < 0);
  CHECK(compare(parse_scalar("0+1*sqrt(2)"), Scalar(1)) > 0);
  CHECK(parse_scalar("3-1*sqrt(5)").sign() > 0);
  CHECK(parse_scalar("2-1*sqrt(5)").sign() < 0);
  CHECK(parse_scalar("0-1*sqrt(3)").sign() < 0);
  CHECK(Scalar(0).sign() == 0);
  CHECK(sub(parse_scalar("7/3"), rat(7, 3)).is_zero());
}

TEST_CASE("codec round-trips its own output") {
  const char* samples[] = {"0",       "-7",          "5/6",
                           "-22/7",   "0+1*sqrt(5)", "1/2-3/2*sqrt(5)",
                           "-4+2*sqrt(30)"};
  for (const char* text : samples) {
    Scalar parsed = parse_scalar(text);
    CHECK(to_string(parsed) == text);
    CHECK(parse_scalar(to_string(parsed)) == parsed);
  }
}

TEST_CASE("malformed scalar strings are rejected") {
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
  CHECK_THROWS_AS(parse_scalar("1+sqrt(5)"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1+1*sqrt(5"), ParseError);
  CHECK_THROWS_AS(parse_scalar("x"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
}

TEST_CASE("mixed discriminants and zero division are domain errors") {
  Scalar a = parse_scalar("0+1*sqrt(2)");
  Scalar b = parse_scalar("0+1*sqrt(3)");
  CHECK_THROWS_AS(add(a, b), MixedDiscriminants);
  CHECK_THROWS_AS(mul(a, b), MixedDiscriminants);
  CHECK_THROWS_AS(div(Scalar(1), Scalar(0)), DivisionByZero);
  CHECK(add(a, Scalar(2)) == parse_scalar("2+1*sqrt(2)"));
}

TEST_CASE("exit codes map from error categories") {
  try {
    div(Scalar(1), Scalar(0));
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::MathDomain);
    CHECK(e.exit_code() == 3);
  }
  try {
    parse_scalar("");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Parse);
    CHECK(e.exit_code() == 2);
  }
}
