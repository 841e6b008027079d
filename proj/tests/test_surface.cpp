#include "flopslope/surface/pair.hpp"
#include "flopslope/surface/positivity.hpp"
#include "generators.hpp"
#include "surface_fixtures.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

using namespace flopslope;
using fixtures::vec;

namespace {

const MPoly b = MPoly::variable(Symbol::beta());

MPoly poly(const char* text) {
  MPoly p = MPoly::parse(text);
  p.declare(Symbol::beta());
  return p;
}

}  // namespace

TEST_CASE("intersection numbers on minimal models") {
  auto f1 = fixtures::f1_section();
  auto E = f1->lattice()->basis(0);
  CHECK(intersect(E, E) == Rational(-1));
  auto K = f1->canonical();
  CHECK(K == f1->lattice()->make_class({-2, -3}));
  CHECK(intersect(K, K) == Rational(8));
  auto p2 = fixtures::plane(3);
  auto H = p2->lattice()->basis(0);
  CHECK(intersect(H, H) == Rational(1));
  CHECK_THROWS_AS(intersect(E, H), LatticeMismatchError);
}

TEST_CASE("lattice validation") {
  RationalMatrix g(2, 2);
  g << Rational(1), Rational(0), Rational(0), Rational(1);
  CHECK_THROWS_AS(PicardLattice::make({"A", "B"}, g, vec({0, 0})), InvalidLatticeError);
  g << Rational(1), Rational(2), Rational(0), Rational(-1);
  CHECK_THROWS_AS(PicardLattice::make({"A", "B"}, g, vec({0, 0})), InvalidLatticeError);
  g << Rational(1), Rational(0), Rational(0), Rational(-1);
  CHECK_NOTHROW(PicardLattice::make({"A", "B"}, g, vec({0, 0})));
  CHECK_THROWS_AS(PicardLattice::make({"A", "A"}, g, vec({0, 0})), InvalidLatticeError);
  CHECK_THROWS_AS(PicardLattice::make({"A", "B"}, g, vec({0})), InvalidLatticeError);
}

TEST_CASE("exact inertia agrees with floating eigenvalues on well-separated matrices") {
  testgen::Gen gen(404);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto n = static_cast<Eigen::Index>(gen.integer(1, 5));
    RationalMatrix m(n, n);
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        long long v = gen.integer(-4, 4);
        m(i, j) = m(j, i) = v;
        d(i, j) = d(j, i) = static_cast<double>(v);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
    const auto& ev = es.eigenvalues();
    if ((ev.array().abs() < 1e-6).any()) continue;  // skip near-singular cases for the float oracle
    Inertia s = inertia(m);
    CHECK(s.positive == (ev.array() > 0).count());
    CHECK(s.negative == (ev.array() < 0).count());
    CHECK(s.zero == 0);
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("blow-up examples") {
  auto two_on_line = fixtures::cubic_line_points(2);
  CHECK(intersect(*two_on_line.z_transform, *two_on_line.z_transform) == Rational(-1));

  auto one = fixtures::cubic_line_points(1);
  const auto& c1 = one.pair->boundary();
  CHECK(intersect(c1, c1) == Rational(8));
  CHECK(intersect(*one.z_transform, *one.z_transform) == Rational(0));
  CHECK(c1 == one.pair->lattice()->make_class({3, -1}));

  auto p = fixtures::plane(3);
  auto none = blow_up(p, {});
  CHECK(none.pair == p);

  BlowupPoint near{true, false, false, 0};
  CHECK_THROWS_AS(blow_up(p, {BlowupPoint{}, near}), InfinitelyNearError);
  CHECK_THROWS_AS(blow_up(p, {BlowupPoint{true, false, true, std::nullopt}}), ConstructionError);
}

TEST_CASE("proper transforms") {
  auto two = fixtures::cubic_line_points(2);
  auto H = fixtures::plane(3)->lattice()->basis(0);
  auto line = proper_transform(two, H, {1, 1});
  CHECK(line == two.pair->lattice()->make_class({1, -1, -1}));
  CHECK(proper_transform(two, H, {0, 0}) == pull_back(two, H));
  auto one = fixtures::cubic_line_points(1);
  auto cubic = proper_transform(one, Rational(3) * fixtures::plane(3)->lattice()->basis(0), {1});
  CHECK(intersect(cubic, cubic) == Rational(8));
  CHECK_THROWS_AS(proper_transform(two, H, {1}), InvalidConfigError);
}

TEST_CASE("adjunction genus") {
  auto p = fixtures::plane(3);
  auto H = p->lattice()->basis(0);
  CHECK(adjunction_genus(*p, H) == 0);
  CHECK(adjunction_genus(*p, Rational(3) * H) == 1);
  auto f1 = fixtures::f1_section();
  CHECK(adjunction_genus(*f1, f1->boundary()) == 0);
  CHECK_THROWS_AS(adjunction_genus(*p, Rational(1, 2) * H), GenusParityError);
}

TEST_CASE("ampleness") {
  auto f1 = fixtures::f1_section();
  auto minus_k = -f1->canonical();
  auto cert = is_ample(*f1, minus_k);
  CHECK(cert.ample);
  CHECK(cert.self_intersection == Rational(8));
  auto e = is_ample(*f1, f1->lattice()->basis(0));
  CHECK_FALSE(e.ample);
  CHECK(e.failing_generator == std::string("E"));
  auto p = fixtures::plane(3);
  CHECK_FALSE(is_ample(*p, p->lattice()->zero()).ample);
  CHECK_THROWS_AS(is_ample(p->with_generators({}), p->lattice()->zero()), EmptyGeneratorListError);
}

TEST_CASE("ampleness region") {
  auto f1 = amp_region(*fixtures::f1_section());
  REQUIRE(f1.region.has_value());
  CHECK(f1.region->str() == "(0, 1]");
  CHECK(f1.asymptotically_log_fano);
  auto cubic = amp_region(*fixtures::plane(3));
  CHECK(cubic.region->str() == "(0, 1]");
  CHECK(cubic.asymptotically_log_fano);
  auto quartic = amp_region(*fixtures::plane(4));
  REQUIRE(quartic.region.has_value());
  CHECK(quartic.region->str() == "(1/4, 1]");
  CHECK_FALSE(quartic.asymptotically_log_fano);
}

TEST_CASE("Seshadri constants") {
  auto f1 = fixtures::f1_section();
  auto eps = seshadri(*f1, f1->boundary(), f1->log_polarization());
  REQUIRE(eps.linear().has_value());
  CHECK(*eps.linear() == poly("1+b"));

  auto p = fixtures::plane(3);
  auto H = p->lattice()->basis(0);
  auto line = seshadri(*p, H, BetaClass(H, p->lattice()->zero()));
  REQUIRE(line.linear().has_value());
  CHECK(*line.linear() == MPoly(1));

  for (int r = 1; r <= 5; ++r) {
    auto bl = fixtures::conic_points(r);
    auto s = seshadri(*bl.pair, bl.pair->boundary(), bl.pair->log_polarization());
    REQUIRE(s.linear().has_value());
    CHECK(*s.linear() == b);
  }
}

TEST_CASE("pseudoeffective threshold certificates") {
  auto one_pt = fixtures::cubic_line_points(1);
  auto cert = pseff_threshold_certificate(*one_pt.pair, *one_pt.z_transform, one_pt.pair->log_polarization());
  REQUIRE(cert.status == CertificateStatus::Certified);
  CHECK(*cert.threshold->linear() == poly("3*b"));
  CHECK(*cert.valid_from == b);

  for (int r = 1; r <= 5; ++r) {
    auto ex = fixtures::conic_points(r);
    auto c = pseff_threshold_certificate(*ex.pair, *ex.z_transform, ex.pair->log_polarization());
    REQUIRE(c.status == CertificateStatus::Certified);
    CHECK(*c.threshold->linear() == poly("1/2+b"));
  }

  auto f1 = fixtures::f1_section();
  auto none = pseff_threshold_certificate(*f1, f1->boundary(), f1->log_polarization());
  CHECK(none.status == CertificateStatus::Unknown);
}

TEST_CASE("(K+C)^2") {
  CHECK(k_plus_c_squared(*fixtures::plane(3)) == Rational(0));
  CHECK(k_plus_c_squared(*fixtures::plane(2)) == Rational(1));
  CHECK(k_plus_c_squared(*fixtures::f1_section()) == Rational(3));
}

TEST_CASE("pullback preserves intersections and exceptionals are orthogonal (-1)-curves") {
  testgen::Gen gen(77);
  for (int trial = 0; trial < 60; ++trial) {
    PairPtr base = trial % 2 == 0 ? fixtures::f1_section() : fixtures::plane(3);
    auto r = static_cast<std::size_t>(gen.integer(1, 6));
    std::vector<BlowupPoint> pts(r);
    for (auto& p : pts) p.on_boundary = gen.integer(0, 1) == 1;
    auto bl = blow_up(base, pts);
    auto random_class = [&] {
      RationalVector v(base->lattice()->rank());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gen.rational(6, 3);
      return base->lattice()->make_class(v);
    };
    auto a = random_class();
    auto c = random_class();
    CHECK(intersect(pull_back(bl, a), pull_back(bl, c)) == intersect(a, c));
    for (std::size_t i = 0; i < r; ++i) {
      CHECK(intersect(pull_back(bl, a), bl.exceptionals[i]) == Rational(0));
      for (std::size_t j = 0; j < r; ++j) {
        CHECK(intersect(bl.exceptionals[i], bl.exceptionals[j]) == Rational(i == j ? -1 : 0));
      }
      CHECK(adjunction_genus(*bl.pair, bl.exceptionals[i]) == 0);
    }
    auto k = base->canonical();
    auto k2 = bl.pair->canonical();
    CHECK(intersect(k2, k2) == intersect(k, k) - Rational(static_cast<long long>(r)));
  }
}

TEST_CASE("Seshadri constant drops under blow-up and is bounded by the deltas") {
  for (int r = 1; r <= 5; ++r) {
    auto ex = fixtures::conic_points(r);
    auto parent = ex.pair->provenance().parent;
    auto eps_parent = seshadri(*parent, parent->boundary(), parent->log_polarization());
    auto eps = seshadri(*ex.pair, *ex.z_transform, ex.pair->log_polarization());
    for (int k = 1; k <= 9; ++k) {
      Rational beta(k, 10);
      CHECK(*eps.at(beta) <= *eps_parent.at(beta));
      for (const auto& e : ex.exceptionals) {
        CHECK(*eps.at(beta) <= evaluate(intersect(ex.pair->log_polarization(), e), {{Symbol::beta(), beta}}));
      }
    }
  }
  for (int r = 1; r <= 2; ++r) {
    auto sec = fixtures::cubic_line_points(r);
    auto parent = sec.pair->provenance().parent;
    auto eps_parent = seshadri(*parent, *sec.pair->provenance().parent_z, parent->log_polarization());
    auto eps = seshadri(*sec.pair, *sec.z_transform, sec.pair->log_polarization());
    for (int k = 1; k <= 9; ++k) {
      Rational beta(k, 10);
      CHECK(*eps.at(beta) <= *eps_parent.at(beta));
    }
  }
}

TEST_CASE("Nakai test agrees with the ampleness region") {
  testgen::Gen gen(16);
  std::vector<PairPtr> pairs{fixtures::f1_section(), fixtures::plane(3), fixtures::plane(4), fixtures::plane(2),
                             fixtures::conic_points(3).pair, fixtures::cubic_line_points(2).pair};
  for (const auto& pair : pairs) {
    auto region = amp_region(*pair);
    for (int i = 0; i < 16; ++i) {
      Rational beta(gen.integer(1, 997), 997);
      bool in_region = region.region && region.region->contains(beta);
      CHECK(is_ample(*pair, pair->log_polarization().at(beta)).ample == in_region);
    }
  }
}

TEST_CASE("generator lists of plane blow-ups") {
  auto two = fixtures::cubic_line_points(2);
  CHECK(two.pair->mori_generators().size() == 3);
  auto six_on_conic = fixtures::conic_points(6);
  // the conic becomes a (-2)-curve; lines through two of the points stay
  bool has_conic = false;
  for (const auto& g : six_on_conic.pair->mori_generators()) {
    bool is_conic = g.curve == six_on_conic.pair->boundary();
    has_conic = has_conic || is_conic;
    bool meets_nonnegatively = intersect(g.curve, six_on_conic.pair->boundary()) >= Rational(0);
    CHECK(meets_nonnegatively != is_conic);
  }
  CHECK(has_conic);
}
