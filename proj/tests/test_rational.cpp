#include "flopslope/error.hpp"
#include "flopslope/exactmath/rational.hpp"
#include "generators.hpp"

#include <doctest.h>

using flopslope::Integer;
using flopslope::Rational;

TEST_CASE("rational canonical form") {
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(-6, 4).str() == "-3/2");
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(8, 4).str() == "2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("12/13") == Rational(12, 13));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-.5") == Rational(-1, 2));
  CHECK(Rational::parse(" 4/6 ") == Rational(2, 3));
  CHECK_THROWS_AS(Rational::parse("1/0"), flopslope::ParseError);
  CHECK_THROWS_AS(Rational::parse("x"), flopslope::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), flopslope::ParseError);
}

TEST_CASE("decimal rendering") {
  CHECK(Rational(12, 13).decimal() == "0.923076923077");
  CHECK(Rational(21, 25).decimal() == "0.84");
  CHECK(Rational(-1, 2).decimal() == "-0.5");
  CHECK(Rational(1, 3).decimal(3) == "0.333");
  CHECK(Rational(2, 3).decimal(3) == "0.667");
  CHECK(Rational(1234567).decimal(3) == "1.23e+06");
  CHECK(Rational(1, 100000).decimal() == "1e-05");
  CHECK(Rational(999, 1000).decimal(2) == "1");
}

TEST_CASE("simplest rational between two bounds") {
  CHECK(simplest_between(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(simplest_between(Rational(3, 10), Rational(2, 5)) == Rational(1, 3));
  CHECK(simplest_between(Rational(-5, 2), Rational(-7, 3)) == Rational(-5, 2));
  CHECK(simplest_between(Rational(-1), Rational(2)) == Rational(0));

  flopslope::testgen::Gen gen(7);
  for (int i = 0; i < 300; ++i) {
    Rational a = gen.rational(50, 30);
    Rational b = gen.rational(50, 30);
    if (b < a) std::swap(a, b);
    Rational s = simplest_between(a, b);
    CHECK(a <= s);
    CHECK(s <= b);
    // no rational with a smaller denominator lies in [a, b]
    for (long long q = 1; q < s.denominator(); ++q) {
      Integer p = Rational(a * Rational(q)).floor() + 1;
      if (Rational(a * Rational(q)).is_integer()) p -= 1;
      CHECK(Rational(p, Integer(q)) > b);
    }
  }
}

TEST_CASE("field axioms on random rationals") {
  flopslope::testgen::Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    Rational a = gen.rational(), b = gen.rational(), c = gen.rational();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rational::parse(a.str()) == a);
    CHECK((a < b) == (a.numerator() * b.denominator() < b.numerator() * a.denominator()));
  }
}
