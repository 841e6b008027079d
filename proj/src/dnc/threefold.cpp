#include "flopslope/dnc/threefold.hpp"

namespace flopslope {

ThreefoldClass& ThreefoldClass::operator+=(const ThreefoldClass& rhs) {
  surface += rhs.surface;
  fiber += rhs.fiber;
  exceptional += rhs.exceptional;
  return *this;
}

ThreefoldClass& ThreefoldClass::operator-=(const ThreefoldClass& rhs) {
  surface -= rhs.surface;
  fiber -= rhs.fiber;
  exceptional -= rhs.exceptional;
  return *this;
}

ThreefoldClass operator*(const MPoly& t, const ThreefoldClass& a) {
  return ThreefoldClass{t * a.surface, t * a.fiber, t * a.exceptional};
}

ThreefoldClass ThreefoldClass::operator-() const { return ThreefoldClass{-surface, -fiber, -exceptional}; }

std::string ThreefoldClass::str() const {
  std::string out;
  auto add = [&out](const std::string& coeff, const std::string& name) {
    if (coeff == "0") return;
    if (!out.empty()) out += "+";
    out += "(" + coeff + ")*" + name;
  };
  if (!surface.is_zero()) out = "pull(" + surface.str() + ")";
  add(fiber.str(), "F");
  add(exceptional.str(), "E");
  return out.empty() ? "0" : out;
}

DNCConfig::DNCConfig(PairPtr pair, DivisorClass z, BetaClass polarization, std::optional<bool> z_is_boundary)
    : pair_(std::move(pair)), z_(std::move(z)), polarization_(std::move(polarization)) {
  if (!pair_) throw InvalidClassError("configuration has no surface");
  require_same_lattice(pair_->lattice(), z_.lattice());
  require_same_lattice(pair_->lattice(), polarization_.lattice());
  if (z_.is_zero()) throw InvalidClassError("Z is the zero class");
  bool same_class = z_ == pair_->boundary();
  z_is_boundary_ = z_is_boundary.value_or(same_class);
  if (z_is_boundary_ && !same_class) {
    throw InvalidClassError("Z is declared to be the boundary but " + z_.str() + " differs from C = " +
                            pair_->boundary().str());
  }
}

DNCConfig DNCConfig::log_fano(PairPtr pair, DivisorClass z, std::optional<bool> z_is_boundary) {
  BetaClass l = pair->log_polarization();
  return DNCConfig(std::move(pair), std::move(z), std::move(l), z_is_boundary);
}

ThreefoldClass DNCConfig::pull(const DivisorClass& a) const { return pull(to_poly(a)); }

ThreefoldClass DNCConfig::pull(const PolyClass& a) const {
  require_same_lattice(pair_->lattice(), a.lattice());
  return ThreefoldClass{a, MPoly(0), MPoly(0)};
}

ThreefoldClass DNCConfig::fiber() const { return ThreefoldClass{to_poly(pair_->lattice()->zero()), MPoly(1), MPoly(0)}; }

ThreefoldClass DNCConfig::exceptional() const {
  return ThreefoldClass{to_poly(pair_->lattice()->zero()), MPoly(0), MPoly(1)};
}

ThreefoldClass DNCConfig::canonical() const { return relative_canonical() - MPoly(2) * fiber(); }

ThreefoldClass DNCConfig::relative_canonical() const { return pull(pair_->canonical()) + exceptional(); }

ThreefoldClass DNCConfig::boundary() const {
  ThreefoldClass d = pull(pair_->boundary());
  if (z_is_boundary_) d -= exceptional();
  return d;
}

ThreefoldClass DNCConfig::test_polarization() const { return test_polarization(polarization_); }

ThreefoldClass DNCConfig::test_polarization(const BetaClass& l) const {
  return pull(l.poly()) - MPoly::variable(Symbol::c()) * exceptional();
}

ThreefoldClass DNCConfig::central_component() const { return fiber() - exceptional(); }

MPoly DNCConfig::triple(const ThreefoldClass& x, const ThreefoldClass& y, const ThreefoldClass& w) const {
  const PolyClass& a = x.surface;
  const PolyClass& b = y.surface;
  const PolyClass& d = w.surface;
  MPoly z_sq(intersect(z_, z_));
  MPoly out = x.fiber * intersect(b, d) + y.fiber * intersect(a, d) + w.fiber * intersect(a, b);
  out -= y.exceptional * w.exceptional * intersect(a, z_);
  out -= x.exceptional * w.exceptional * intersect(b, z_);
  out -= x.exceptional * y.exceptional * intersect(d, z_);
  out -= x.exceptional * y.exceptional * w.exceptional * z_sq;
  return out;
}

MPoly DNCConfig::curve_pairing(const ThreefoldClass& x, const DivisorClass& curve) const {
  require_same_lattice(pair_->lattice(), curve.lattice());
  return intersect(x.surface, curve) + x.exceptional * MPoly(intersect(z_, curve));
}

TripleProductTable triple_products(const DNCConfig& config) {
  ThreefoldClass l = config.pull(config.polarization().poly());
  ThreefoldClass e = config.exceptional();
  ThreefoldClass k = config.relative_canonical();
  TripleProductTable t;
  t.e_cubed = config.triple(e, e, e);
  t.l_e_e = config.triple(l, e, e);
  t.l_l_e = config.triple(l, l, e);
  t.l_cubed = config.triple(l, l, l);
  t.k_l_l = config.triple(k, l, l);
  t.k_l_e = config.triple(k, l, e);
  t.k_e_e = config.triple(k, e, e);
  return t;
}

}  // namespace flopslope
