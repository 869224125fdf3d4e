#include <cstdlib>

#include "doctest.h"
#include "weyl/errors.hpp"
#include "weyl/exact.hpp"

using namespace weyl;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("-2/6") == Rational(-1, 3));
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK(to_string(make_rational(-3, 9)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("int128 conversion keeps all bits") {
  const __int128 big = static_cast<__int128>(1) << 100;
  Integer expect = 1;
  expect <<= 100;
  CHECK(to_integer(big) == expect);
  CHECK(to_integer(-big) == -expect);
  CHECK(to_integer(0) == 0);
}

TEST_CASE("pi and gamma to 50 digits") {
  CHECK(BigFloat::pi(50).to_fixed(50) == "3.1415926535897932384626433832795028841971693993751");
  CHECK(BigFloat::euler_gamma(30).to_fixed(30) == "0.577215664901532860606512090082");
}

TEST_CASE("decimal rendering rounds half to even") {
  CHECK(BigFloat(Rational(1, 8), 30).to_fixed(2) == "0.12");
  CHECK(BigFloat(Rational(3, 8), 30).to_fixed(2) == "0.38");
  CHECK(BigFloat(Rational(-5, 2), 30).to_fixed(3) == "-2.50");
  CHECK(BigFloat(Integer(123456), 30).to_scientific(3) == "1.23e+05");
  CHECK(BigFloat(Rational(-1, 1000), 30).to_scientific(2) == "-1.0e-03");
  CHECK(BigFloat(30).to_fixed(3) == "0.00");
}

TEST_CASE("decimal exponent") {
  CHECK(BigFloat(Integer(999), 30).decimal_exponent() == 3);
  CHECK(BigFloat(Integer(1000), 30).decimal_exponent() == 4);
  CHECK(BigFloat(Rational(1, 100), 30).decimal_exponent() == -1);
  CHECK(BigFloat(30).decimal_exponent() == 0);
}

TEST_CASE("binary operations use the larger precision") {
  const BigFloat lo(Integer(1), 20);
  const BigFloat hi(Integer(3), 60);
  const BigFloat q = lo / hi;
  CHECK(q.bits() == hi.bits());
  CHECK(q.to_fixed(55) == "0." + std::string(55, '3'));
}

TEST_CASE("BigFloat elementary functions") {
  const int d = 40;
  CHECK(sqrt(Rational(2), d).to_fixed(20) == "1.4142135623730950488");
  CHECK(log(exp(BigFloat(Integer(3), d))).to_fixed(30) == BigFloat(Integer(3), d).to_fixed(30));
  CHECK(pow(BigFloat(Integer(2), d), 100).to_fixed(31) == "1267650600228229401496703205376");
  CHECK(pow(BigFloat(Integer(2), d), -2).to_fixed(3) == "0.250");
  // cot(pi/4) = 1
  CHECK(cot(BigFloat::pi(d) / Rational(4)).to_fixed(30) == "1.00000000000000000000000000000");
  CHECK(abs(BigFloat(Integer(-2), d)) == BigFloat(Integer(2), d));
}

TEST_CASE("ExactValue arithmetic is exact and canonical") {
  const ExactValue a = ExactValue::pi_power(2, Rational(1, 2));
  const ExactValue b = ExactValue::pi_power(2, Rational(-1, 2));
  CHECK((a + b).is_zero());
  CHECK((a + b) == ExactValue());
  const ExactValue c = a * ExactValue::pi_power(1, 4);
  CHECK(c.coefficient(3) == 2);
  CHECK(c.terms().size() == 1);
  CHECK(ExactValue::pi_power(1, Rational(1, 24)).to_string() == "1/24*pi");
  CHECK(ExactValue::pi_power(1).to_string() == "pi");
  CHECK((ExactValue(Rational(3)) + ExactValue::pi_power(2, -1)).to_string() == "3 - pi^2");
}

TEST_CASE("ExactValue evaluation") {
  const ExactValue half_pi_sq = ExactValue::pi_power(2, Rational(1, 2));
  CHECK(half_pi_sq.evaluate(30).to_fixed(20) == "4.9348022005446793094");
  CHECK(ExactValue(7).evaluate(30).to_fixed(5) == "7.0000");
}

TEST_CASE("default precision honours the environment") {
  ::unsetenv("WEYL_LAB_DIGITS");
  CHECK(default_digits() == kDefaultDigits);
  ::setenv("WEYL_LAB_DIGITS", "120", 1);
  CHECK(default_digits() == 120);
  ::setenv("WEYL_LAB_DIGITS", "garbage", 1);
  CHECK(default_digits() == kDefaultDigits);
  ::unsetenv("WEYL_LAB_DIGITS");
}
