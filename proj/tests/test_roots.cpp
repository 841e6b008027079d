#include "flopslope/error.hpp"
#include "flopslope/exactmath/roots.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace flopslope;

namespace {

const MPoly b = MPoly::variable(Symbol::beta());

MPoly from_roots(const std::vector<std::pair<Rational, unsigned>>& roots, const Rational& lead) {
  MPoly p = lead;
  for (const auto& [r, m] : roots) p *= pow(b - MPoly(r), m);
  return p;
}

}  // namespace

TEST_CASE("thresholds of the one-point flop family are exact") {
  MPoly f = MPoly::parse("24*b^2-26*b^3");
  auto roots = isolate_real_roots(f, Interval::unit_beta());
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].exact_value() == Rational(12, 13));
  CHECK(roots[0].sign_left == 1);
  CHECK(roots[0].sign_right == -1);

  auto g = isolate_real_roots(MPoly::parse("21*b^2-25*b^3"), Interval::unit_beta());
  REQUIRE(g.size() == 1);
  CHECK(g[0].exact_value() == Rational(21, 25));
}

TEST_CASE("irrational roots are bracketed") {
  auto roots = isolate_real_roots(MPoly::parse("b^2+2*b-2"), Interval::unit_beta());
  REQUIRE(roots.size() == 1);
  const auto& r = roots[0];
  CHECK_FALSE(r.is_exact());
  const Rational& lo = r.isolating_interval.lo();
  const Rational& hi = r.isolating_interval.hi();
  // root is sqrt(3) - 1
  CHECK((lo + 1) * (lo + 1) < Rational(3));
  CHECK((hi + 1) * (hi + 1) > Rational(3));
  CHECK(r.isolating_interval.width() <= default_root_width());
  CHECK(r.approx() == "0.732050807569");
  CHECK(compare(r, Rational(73, 100)) == 1);
  CHECK(compare(r, Rational(74, 100)) == -1);
}

TEST_CASE("even multiplicity roots are flagged by equal side signs") {
  MPoly f = from_roots({{Rational(1, 2), 2}, {Rational(3, 4), 1}}, 1);
  auto roots = isolate_real_roots(f, Interval::unit_beta());
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].exact_value() == Rational(1, 2));
  CHECK(roots[0].multiplicity == 2);
  CHECK_FALSE(roots[0].crosses());
  CHECK(roots[1].crosses());
}

TEST_CASE("window endpoints respect open and closed ends") {
  MPoly f = b * (b - Rational(1));
  CHECK(isolate_real_roots(f, Interval::unit_beta()).size() == 1);
  CHECK(isolate_real_roots(f, Interval::closed(0, 1)).size() == 2);
  CHECK(isolate_real_roots(f, Interval::open(0, 1)).empty());
  CHECK_THROWS_AS(Interval::open(1, 1), EmptyWindowError);
  CHECK_THROWS_AS(Interval::closed(1, 0), EmptyWindowError);
  CHECK_THROWS_AS(isolate_real_roots(MPoly(), Interval::unit_beta()), ZeroPolynomialError);
  CHECK_THROWS_AS(isolate_real_roots(MPoly::parse("b*c"), Interval::unit_beta()), NotUnivariateError);
}

TEST_CASE("sign on interval") {
  auto pos = sign_on_interval(MPoly::parse("b^2+1"), Interval::unit_beta());
  CHECK(pos.kind == SignKind::Positive);
  CHECK(pos.positive_witness.has_value());

  auto zero = sign_on_interval(MPoly(), Interval::unit_beta());
  CHECK(zero.kind == SignKind::Zero);

  auto mixed = sign_on_interval(MPoly::parse("24*b^2-26*b^3"), Interval::unit_beta());
  CHECK(mixed.kind == SignKind::Mixed);
  REQUIRE(mixed.negative_witness.has_value());
  CHECK(*mixed.negative_witness > Rational(12, 13));
  CHECK(evaluate(MPoly::parse("24*b^2-26*b^3"), {{Symbol::beta(), *mixed.negative_witness}}).sign() < 0);

  auto touching = sign_on_interval(MPoly::parse("(2*b-1)^2"), Interval::unit_beta());
  CHECK(touching.kind == SignKind::Mixed);
  CHECK_FALSE(touching.negative_witness.has_value());
  CHECK(touching.zero_witness == Rational(1, 2));

  auto neg = sign_on_interval(MPoly::parse("-b"), Interval::unit_beta());
  CHECK(neg.kind == SignKind::Negative);
}

TEST_CASE("root isolation agrees with planted roots") {
  testgen::Gen gen(99);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<std::pair<Rational, unsigned>> planted;
    std::set<Rational> distinct;
    auto n = gen.integer(1, 5);
    for (int i = 0; i < n; ++i) {
      Rational r = gen.rational(12, 7);
      auto m = static_cast<unsigned>(gen.integer(1, 3));
      planted.emplace_back(r, m);
      distinct.insert(r);
    }
    // an irreducible quadratic factor with roots +-sqrt(k) for non-square k
    long long k = gen.integer(2, 3);
    MPoly f = from_roots(planted, gen.positive_rational()) * (b * b - MPoly(Rational(k)));
    Interval window = Interval::closed(-3, 3);
    auto roots = isolate_real_roots(f, window);

    std::vector<Rational> exact;
    std::size_t irrational = 0;
    for (const auto& r : roots) {
      if (r.is_exact()) {
        exact.push_back(*r.exact_value());
      } else {
        ++irrational;
        UPoly u = UPoly::from_mpoly(f, Symbol::beta());
        CHECK(u.sign_at(r.isolating_interval.lo()) != 0);
        CHECK(u.sign_at(r.isolating_interval.hi()) != 0);
      }
    }
    std::vector<Rational> expected;
    for (const auto& r : distinct) {
      if (window.contains(r)) expected.push_back(r);
    }
    CHECK(exact == expected);
    CHECK(irrational == 2);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      CHECK(roots[i].isolating_interval.hi() <= roots[i + 1].isolating_interval.lo());
    }
    CHECK(count_distinct_roots(UPoly::from_mpoly(f, Symbol::beta()), window) == roots.size());

    // multiplicities reproduce the planted ones
    for (const auto& r : roots) {
      if (!r.is_exact()) continue;
      unsigned m = 0;
      for (const auto& [q, mult] : planted) {
        if (q == *r.exact_value()) m += mult;
      }
      CHECK(r.multiplicity == m);
      CHECK(r.crosses() == (m % 2 == 1));
    }
  }
}

TEST_CASE("sign witnesses are genuine") {
  testgen::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    MPoly f = gen.poly(1, 5, 5);
    if (f.is_zero()) continue;
    Interval window = Interval::unit_beta();
    auto report = sign_on_interval(f, window);
    auto value = [&](const Rational& x) { return evaluate(f, {{Symbol::beta(), x}}); };
    if (report.positive_witness) {
      CHECK(window.contains(*report.positive_witness));
      CHECK(value(*report.positive_witness).sign() > 0);
    }
    if (report.negative_witness) {
      CHECK(window.contains(*report.negative_witness));
      CHECK(value(*report.negative_witness).sign() < 0);
    }
    if (report.zero_witness) CHECK(value(*report.zero_witness).is_zero());
    if (report.kind == SignKind::Positive) CHECK_FALSE(report.negative_witness.has_value());
    // grid oracle: a sign seen on a fine grid is reported
    bool saw_neg = false;
    bool saw_pos = false;
    for (int i = 1; i <= 64; ++i) {
      int s = value(Rational(i, 64)).sign();
      saw_neg = saw_neg || s < 0;
      saw_pos = saw_pos || s > 0;
    }
    if (saw_neg) CHECK(report.negative_witness.has_value());
    if (saw_pos) CHECK(report.positive_witness.has_value());
  }
}

TEST_CASE("root comparison") {
  auto r1 = isolate_real_roots(MPoly::parse("b^2-2"), Interval::closed(0, 2))[0];
  auto r2 = isolate_real_roots(MPoly::parse("2*b^2-4"), Interval::closed(1, 3))[0];
  CHECK(compare(r1, r2) == 0);
  auto r3 = isolate_real_roots(MPoly::parse("b^2-3"), Interval::closed(0, 2))[0];
  CHECK(compare(r1, r3) == -1);
  Rational between = rational_between(r1, r3);
  CHECK(compare(r1, between) == -1);
  CHECK(compare(r3, between) == 1);
}

TEST_CASE("documented evaluation and substitution examples") {
  MPoly p = MPoly::parse("b^2+2*b-2");
  CHECK(evaluate(p, {{Symbol::beta(), 1}}) == Rational(1));
  CHECK(evaluate(MPoly(), {{Symbol::beta(), 1}}) == Rational(0));
  CHECK(evaluate(MPoly::parse("24*b^2-26*b^3"), {{Symbol::beta(), Rational(12, 13)}}) == Rational(0));

  MPoly q = MPoly::parse("2*c^3-3*c^2*b");
  MPoly one_plus_b = MPoly::parse("1+b");
  // checked against the unexpanded form at many points
  MPoly composed = substitute(q, Symbol::c(), one_plus_b);
  for (int i = -5; i <= 5; ++i) {
    Rational x(i, 3);
    Rational y = 1 + x;
    CHECK(evaluate(composed, {{Symbol::beta(), x}}) == 2 * y * y * y - 3 * y * y * x);
  }
  CHECK(composed == MPoly::parse("-b^3+3*b+2"));
  MPoly c = MPoly::variable(Symbol::c());
  CHECK(substitute(c, Symbol::c(), c) == c);
}

TEST_CASE("documented sign examples") {
  CHECK(sign_on_interval(MPoly::parse("24*b^2-26*b^3"), Interval::open(Rational(12, 13), 1)).kind ==
        SignKind::Negative);
  CHECK(sign_on_interval(MPoly::parse("b^2"), Interval::open(0, 1)).kind == SignKind::Positive);
  auto mixed = sign_on_interval(MPoly::parse("b^2+2*b-2"), Interval::open(0, 1));
  CHECK(mixed.kind == SignKind::Mixed);
  REQUIRE(mixed.positive_witness.has_value());
  REQUIRE(mixed.negative_witness.has_value());
  CHECK(*mixed.negative_witness < Rational(732, 1000));
  CHECK(*mixed.positive_witness > Rational(733, 1000));
  CHECK(isolate_real_roots(MPoly::parse("b^2+1"), Interval::unit_beta()).empty());
  CHECK(isolate_real_roots(MPoly::parse("21-25*b"), Interval::unit_beta())[0].exact_value() == Rational(21, 25));
}

TEST_CASE("isolating intervals stay certified under bisection") {
  testgen::Gen gen(314);
  for (int trial = 0; trial < 100; ++trial) {
    MPoly f = gen.poly(1, 6, 6);
    if (f.degree() < 1) continue;
    for (auto r : isolate_real_roots(f, Interval::closed(-4, 4))) {
      UPoly u = UPoly::from_mpoly(r.defining_polynomial, r.variable);
      for (int step = 0; step < 4; ++step) {
        CHECK(count_distinct_roots(u, r.isolating_interval) == 1);
        r.refine();
      }
    }
  }
}

TEST_CASE("sign report agrees with evaluation at random points") {
  testgen::Gen gen(2718);
  for (int trial = 0; trial < 100; ++trial) {
    MPoly f = gen.poly(1, 5, 5);
    if (f.is_zero()) continue;
    auto report = sign_on_interval(f, Interval::unit_beta());
    for (int i = 0; i < 16; ++i) {
      Rational x(gen.integer(1, 1000), 1000);
      int s = evaluate(f, {{Symbol::beta(), x}}).sign();
      if (report.kind == SignKind::Positive) CHECK(s > 0);
      if (report.kind == SignKind::Negative) CHECK(s < 0);
      if (s < 0) CHECK(report.negative_witness.has_value());
      if (s > 0) CHECK(report.positive_witness.has_value());
    }
  }
}
