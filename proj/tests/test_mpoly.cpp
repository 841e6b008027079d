#include "flopslope/error.hpp"
#include "flopslope/exactmath/mpoly.hpp"
#include "generators.hpp"

#include <doctest.h>

using namespace flopslope;

namespace {

const MPoly b = MPoly::variable(Symbol::beta());
const MPoly c = MPoly::variable(Symbol::c());

// Independent evaluation: sum over terms, each power computed by repeated
// multiplication.
Rational naive_eval(const MPoly& p, const Assignment& at) {
  Rational acc = 0;
  for (const auto& [e, coef] : p.terms()) {
    Rational t = coef;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= at.at(Symbol::from_index(static_cast<unsigned>(i)));
    }
    acc += t;
  }
  return acc;
}

}  // namespace

TEST_CASE("canonical serialization") {
  MPoly f = Rational(24) * b * b - Rational(26) * b * b * b;
  CHECK(f.str() == "-26*b^3+24*b^2");
  CHECK((b - b).str() == "0");
  CHECK((Rational(1, 2) * c + b).str() == "b+1/2*c");
  CHECK((b * c - c * c + Rational(3)).str() == "b*c-c^2+3");
  CHECK((-b).str() == "-b");
  CHECK(MPoly(Rational(-3, 4)).str() == "-3/4");
  CHECK(MPoly::variable(Symbol::delta(2)).str() == "d2");
}

TEST_CASE("parse accepts canonical and free-form input") {
  CHECK(MPoly::parse("-26*b^3+24*b^2") == Rational(24) * b * b - Rational(26) * b * b * b);
  CHECK(MPoly::parse("6*c*b*(2-c)") == Rational(12) * b * c - Rational(6) * b * c * c);
  CHECK(MPoly::parse("(b+1)^2/2") == (b * b + Rational(2) * b + Rational(1)) / Rational(2));
  CHECK(MPoly::parse("0.5*b") == Rational(1, 2) * b);
  CHECK(MPoly::parse("g - d1").str() == "g-d1");
  CHECK_THROWS_AS(MPoly::parse("b/c"), ParseError);
  CHECK_THROWS_AS(MPoly::parse("b +"), ParseError);
  CHECK_THROWS_AS(MPoly::parse("x"), ParseError);
  CHECK_THROWS_AS(MPoly::parse("(b"), ParseError);
}

TEST_CASE("evaluate and substitute") {
  MPoly f = MPoly::parse("6*c*b*(2-c)");
  CHECK(evaluate(f, {{Symbol::beta(), Rational(1, 2)}, {Symbol::c(), Rational(3, 2)}}) == Rational(9, 4));
  CHECK_THROWS_AS(evaluate(f, {{Symbol::beta(), 1}}), MissingVariableError);
  try {
    (void)evaluate(f, {{Symbol::beta(), 1}});
  } catch (const MissingVariableError& e) {
    CHECK(std::string(e.what()).find('c') != std::string::npos);
  }
  MPoly g = substitute(f, Symbol::c(), Rational(3) * b);
  CHECK(g == MPoly::parse("36*b^2-54*b^3"));
  CHECK_THROWS_AS(substitute(b, Symbol::c(), b), UnknownVariableError);
  CHECK(limit_at_zero_plus(MPoly::parse("-1/2+3*b-b^2"), Symbol::beta()) == MPoly(Rational(-1, 2)));
  MPoly declared = b;
  declared.declare(Symbol::c());
  CHECK_THROWS_AS(evaluate(declared, {{Symbol::beta(), 1}}), MissingVariableError);
}

TEST_CASE("ring laws and round trips on random polynomials") {
  testgen::Gen gen(20240601);
  for (int i = 0; i < 200; ++i) {
    MPoly p = gen.poly(3, 4, 5), q = gen.poly(3, 4, 5), r = gen.poly(3, 3, 4);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p - p == MPoly());
    CHECK(MPoly::parse(p.str()) == p);
    CHECK(MPoly::parse(p.str()).str() == p.str());

    Assignment at{{Symbol::beta(), gen.rational()}, {Symbol::c(), gen.rational()}, {Symbol::gamma(), gen.rational()}};
    CHECK(evaluate(p, at) == naive_eval(p, at));
    CHECK(evaluate(p * q, at) == evaluate(p, at) * evaluate(q, at));
    CHECK(evaluate(p + q, at) == evaluate(p, at) + evaluate(q, at));

    // substitution commutes with evaluation
    MPoly s = gen.poly(1, 2, 3);
    MPoly composed = substitute(p, Symbol::c(), s);
    Assignment inner = at;
    inner[Symbol::c()] = evaluate(s, {{Symbol::beta(), at[Symbol::beta()]}});
    CHECK(evaluate(composed, at) == evaluate(p, inner));
  }
}

TEST_CASE("term order is descending graded lex") {
  MPoly p = MPoly::parse("1 + c + b + b*c + c^2 + b^2");
  CHECK(p.str() == "b^2+b*c+c^2+b+c+1");
  CHECK(p.degree() == 2);
  CHECK(p.degree_in(Symbol::c()) == 2);
  CHECK(p.coefficient(Symbol::c(), 1) == b + Rational(1));
}
