#include "doctest.h"

#include "flopslope/analyzer/analyzer.hpp"
#include "generators.hpp"
#include "surface_fixtures.hpp"

#include <algorithm>

using namespace flopslope;
using fixtures::vec;

namespace {

MPoly P(const std::string& text) {
  MPoly p = MPoly::parse(text);
  p.declare(Symbol::beta());
  p.declare(Symbol::c());
  return p;
}

bool same(MPoly a, MPoly b) {
  for (Symbol s : {Symbol::beta(), Symbol::c()}) {
    a.declare(s);
    b.declare(s);
  }
  return a == b;
}

void check_witness(const StabilityReport& r) {
  REQUIRE(r.verdict == Verdict::Unstable);
  REQUIRE(r.witness);
  Assignment a{{Symbol::beta(), r.witness->beta}, {Symbol::c(), r.witness->c}};
  CHECK(evaluate(r.futaki.value, a).sign() < 0);
  CHECK(r.window.contains(r.witness->beta, r.witness->c));
}

/// F_1 with boundary in |E+F| blown up at r points of the boundary, Z = C.
BlowupResult f1_points(int r) {
  PairPtr p = fixtures::f1_section();
  std::vector<BlowupPoint> pts(static_cast<std::size_t>(r), BlowupPoint{true, true, false, std::nullopt});
  return blow_up(p, pts, p->boundary());
}

}  // namespace

TEST_CASE("Maeda pipeline") {
  auto conic = fixtures::plane(2);
  CHECK(boundary_seshadri(*conic) == Rational(1, 2));
  CHECK(default_gamma(*conic) == Rational(1, 4));
  auto r = maeda_destabilize(conic, Rational(1, 4));
  check_witness(r);
  REQUIRE(r.limit_at_zero);
  CHECK(r.limit_at_zero->constant_term() <= Rational(-1, 8));
  REQUIRE(r.beta0);
  CHECK(r.beta0->sign() > 0);
  REQUIRE(r.bound);
  for (int k = 1; k < 10; ++k) {
    Rational b(k, 10);
    if (b >= *r.beta0) break;
    CHECK(evaluate(*r.reduced, {{Symbol::beta(), b}}).sign() < 0);
  }

  auto f1 = fixtures::f1_section();
  CHECK(boundary_seshadri(*f1) == Rational(1));
  auto rf = maeda_destabilize(f1, Rational(1, 2));
  check_witness(rf);
  CHECK(rf.limit_at_zero->constant_term() <= Rational(-1, 2));
  REQUIRE(rf.beta0);

  CHECK_THROWS_AS(maeda_destabilize(conic, Rational(0)), OutOfRangeError);
  CHECK_THROWS_AS(maeda_destabilize(conic, Rational(1, 2)), OutOfRangeError);
  CHECK(maeda_destabilize(fixtures::plane(3), Rational(1, 4)).verdict == Verdict::InvalidConfig);

  SUBCASE("bound dominates at admissible points") {
    testgen::Gen g(61);
    for (const auto& p : {conic, f1}) {
      Rational eps = boundary_seshadri(*p);
      for (int k = 0; k < 16; ++k) {
        Rational gamma = eps * Rational(g.integer(1, 99), 100);
        auto rep = maeda_destabilize(p, gamma);
        Rational b(g.integer(1, 100), 100);
        Assignment a{{Symbol::beta(), b}};
        CHECK(evaluate(*rep.reduced, a) < evaluate(*rep.bound, a));
      }
    }
  }
}

TEST_CASE("long-form identity for flops of Maeda blow-ups") {
  for (int r = 1; r <= 5; ++r) {
    CAPTURE(r);
    auto b = fixtures::conic_points(r);
    DNCConfig cfg = DNCConfig::log_fano(b.pair, *b.z_transform);
    FutakiPoly f = flop_futaki(cfg, flop_spec_from(cfg));
    CHECK(same(futaki_long_eq(*b.pair->provenance().parent, r, MPoly::variable(Symbol::c())), f.value));
    CHECK(same(flop_parent_form(*b.pair->provenance().parent, *b.pair->provenance().parent_z, true,
                                b.pair->provenance().points),
               f.value));
  }
  for (int r = 1; r <= 3; ++r) {
    CAPTURE(r);
    auto b = f1_points(r);
    DNCConfig cfg = DNCConfig::log_fano(b.pair, *b.z_transform);
    FutakiPoly f = flop_futaki(cfg, flop_spec_from(cfg));
    CHECK(same(futaki_long_eq(*b.pair->provenance().parent, r, MPoly::variable(Symbol::c())), f.value));
  }
  for (auto b : {fixtures::p2_one_point(), fixtures::p2_two_points()}) {
    DNCConfig cfg = DNCConfig::log_fano(b.pair, *b.z_transform);
    FutakiPoly f = flop_futaki(cfg, flop_spec_from(cfg));
    CHECK(same(flop_parent_form(*b.pair->provenance().parent, *b.pair->provenance().parent_z, false,
                                b.pair->provenance().points),
               f.value));
  }
}

TEST_CASE("flop pipeline for Maeda blow-ups") {
  for (int r = 1; r <= 5; ++r) {
    CAPTURE(r);
    auto b = fixtures::conic_points(r);
    auto lim = flop_destabilize(b.pair, Rational(1, 4), P("1/2+b"));
    REQUIRE(lim.limit_at_zero);
    CHECK(*lim.limit_at_zero == MPoly(Rational(-1, 2)));

    auto rep = flop_destabilize(b.pair, Rational(1, 4));
    check_witness(rep);
    REQUIRE(rep.beta0);
    CHECK(rep.witness->beta < Rational(1, 4));
    CHECK(rep.certificates.end() !=
          std::find_if(rep.certificates.begin(), rep.certificates.end(),
                       [](const std::string& s) { return s.rfind("flopped F = ", 0) == 0; }));
  }

  SUBCASE("bound dominates at admissible points") {
    testgen::Gen g(62);
    for (int r = 1; r <= 5; ++r) {
      auto b = fixtures::conic_points(r);
      const SurfacePair& parent = *b.pair->provenance().parent;
      for (int k = 0; k < 16; ++k) {
        // b < g < 1/2 + b
        Rational beta(g.integer(1, 99), 100);
        Rational gamma = beta + Rational(g.integer(1, 49), 100);
        Assignment a{{Symbol::beta(), beta}, {Symbol::c(), gamma}};
        MPoly gp = MPoly::variable(Symbol::c());
        CHECK(evaluate(futaki_long_eq(parent, r, gp), a) < evaluate(restrict_eq_bound(parent, r, gp), a));
      }
    }
  }

  CHECK(flop_destabilize(fixtures::plane(2), Rational(1, 4)).verdict == Verdict::InvalidConfig);
  CHECK_THROWS_AS(flop_destabilize(fixtures::conic_points(2).pair, Rational(1, 2)), OutOfRangeError);
}

TEST_CASE("flop pipeline on the recorded Z") {
  auto one_pt = fixtures::p2_one_point();
  auto r61 = flop_slope_verdict(one_pt.pair, P("3*b"));
  REQUIRE(r61.reduced);
  CHECK(same(*r61.reduced, P("-26*b^3+24*b^2")));
  REQUIRE(r61.thresholds.size() == 1);
  CHECK(r61.thresholds[0].exact_value() == Rational(12, 13));
  REQUIRE(r61.beta_unstable_ranges.size() == 1);
  CHECK(r61.beta_unstable_ranges[0].lo.exact_value() == Rational(12, 13));
  check_witness(r61);
  CHECK(r61.witness->beta > Rational(12, 13));

  auto d61 = flop_slope_verdict(one_pt.pair);
  CHECK(same(*d61.reduced, P("-26*b^3+24*b^2")));
  check_witness(d61);

  auto two_pt = fixtures::p2_two_points();
  auto r62 = flop_slope_verdict(two_pt.pair);
  CHECK(same(*r62.reduced, P("b^2*(21-25*b)")));
  REQUIRE(r62.thresholds.size() == 1);
  CHECK(r62.thresholds[0].exact_value() == Rational(21, 25));
  check_witness(r62);

  auto over = flop_slope_verdict(one_pt.pair, P("3*b"), {Rational(0)});
  CHECK(same(*over.reduced, P("36*b^2-38*b^3")));
  REQUIRE(over.thresholds.size() == 1);
  CHECK(over.thresholds[0].exact_value() == Rational(18, 19));
  CHECK_THROWS_AS(flop_slope_verdict(one_pt.pair, std::nullopt, {Rational(0), Rational(0)}), InvalidConfigError);

  CHECK(flop_slope_verdict(fixtures::plane(3)).verdict == Verdict::InvalidConfig);
}

TEST_CASE("theorem check routing") {
  auto cubic = theorem_check(fixtures::plane(3));
  CHECK(cubic.verdict == Verdict::NotDestabilized);
  CHECK(cubic.reason.find("(K+C)^2 = 0") != std::string::npos);

  auto conic = theorem_check(fixtures::plane(2));
  check_witness(conic);
  CHECK(conic.beta0);
  CHECK(conic.pipeline == "theorem/maeda");

  for (auto b : {fixtures::p2_one_point(), fixtures::p2_two_points()}) {
    auto r = theorem_check(b.pair);
    check_witness(r);
    CHECK_FALSE(r.beta0);
    CHECK(r.pipeline == "theorem/flop");
  }

  auto ex = theorem_check(fixtures::conic_points(3).pair);
  check_witness(ex);
  CHECK(ex.beta0);
  CHECK(ex.pipeline == "theorem/flop-destabilize");

  auto not_alf = theorem_check(fixtures::hirz(2, {1, 4}));
  CHECK(not_alf.verdict == Verdict::InvalidConfig);

  auto b2 = fixtures::conic_points(2).pair;
  auto bare = std::make_shared<const SurfacePair>("bare", b2->lattice(), b2->boundary(), b2->mori_generators());
  CHECK(theorem_check(bare).verdict == Verdict::InvalidConfig);

  SUBCASE("no small-b claim when (K+C)^2 = 0") {
    for (int r = 1; r <= 3; ++r) {
      auto rep = theorem_check(fixtures::cubic_line_points(r).pair);
      CHECK_FALSE(rep.beta0);
      if (rep.verdict == Verdict::Unstable) CHECK(rep.witness->beta > Rational(1, 2));
    }
  }
}

TEST_CASE("slope test with an explicit c rule") {
  for (const auto& [p, gamma] : {std::pair{fixtures::plane(2), Rational(1, 4)}, std::pair{fixtures::f1_section(), Rational(1, 2)}}) {
    DNCConfig cfg = DNCConfig::log_fano(p, p->boundary());
    auto rule = slope_rule_verdict(cfg, MPoly(gamma));
    auto maeda = maeda_destabilize(p, gamma);
    CHECK(same(*rule.reduced, *maeda.reduced));
    CHECK(rule.verdict == maeda.verdict);
    REQUIRE(rule.beta0);
    CHECK(*rule.beta0 == *maeda.beta0);
    check_witness(rule);
  }

  // c = b stays inside (0, 1+b) and F(b, b) = 6b^2 + 2b^3 > 0
  auto f1 = fixtures::f1_section();
  auto pos = slope_rule_verdict(DNCConfig::log_fano(f1, f1->boundary()), P("b"));
  CHECK(same(*pos.reduced, P("6*b^2+2*b^3")));
  CHECK(pos.verdict == Verdict::NotDestabilized);
  CHECK(pos.beta_unstable_ranges.empty());

  // c = 2 + b is never inside the window
  auto out = slope_rule_verdict(DNCConfig::log_fano(f1, f1->boundary()), P("2+b"));
  CHECK(out.verdict == Verdict::NotDestabilized);
  CHECK(out.beta_unstable_ranges.empty());
  CHECK_THROWS_AS(slope_rule_verdict(DNCConfig::log_fano(f1, f1->boundary()), P("c")), InvalidConfigError);
}
