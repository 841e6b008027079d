#include "flopslope/dnc/report.hpp"

#include <stdexcept>

namespace flopslope {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Unstable: return "Unstable";
    case Verdict::NotDestabilized: return "NotDestabilized";
    case Verdict::InvalidConfig: return "InvalidConfig";
  }
  return "unknown";
}

const WindowPiece* CWindow::at(const Rational& beta) const {
  for (const auto& p : pieces) {
    if (p.beta_range.contains(beta)) return &p;
  }
  return nullptr;
}

bool CWindow::contains(const Rational& beta, const Rational& c) const {
  const WindowPiece* p = at(beta);
  if (!p) return unbounded && c.sign() > 0;
  Assignment at_beta{{Symbol::beta(), beta}};
  return evaluate(p->lower, at_beta) < c && c < evaluate(p->upper, at_beta);
}

std::string CWindow::str() const {
  if (pieces.empty()) return unbounded ? "(0, inf)" : "unknown";
  std::string out;
  for (const auto& p : pieces) {
    if (!out.empty()) out += "; ";
    out += "(" + p.lower.str() + ", " + p.upper.str() + ") for b in " + p.beta_range.str();
  }
  return out;
}

void StabilityReport::mark_unstable(const Rational& beta, const Rational& c, std::string reason_text) {
  Assignment point{{Symbol::beta(), beta}, {Symbol::c(), c}};
  Rational value = evaluate(futaki.value, point);
  Rational denominator = evaluate(futaki.denominator, point);
  if (value.sign() >= 0) {
    throw std::logic_error("witness (b, c) = (" + beta.str() + ", " + c.str() + ") gives F = " + value.str() + " >= 0");
  }
  if (denominator.sign() <= 0) {
    throw std::logic_error("witness b = " + beta.str() + " has nonpositive L^2 = " + denominator.str());
  }
  if (!window.contains(beta, c)) {
    throw std::logic_error("witness c = " + c.str() + " lies outside the window " + window.str() + " at b = " + beta.str());
  }
  witness = Witness{beta, c, value};
  verdict = Verdict::Unstable;
  reason = std::move(reason_text);
  certificates.push_back("F(" + beta.str() + ", " + c.str() + ") = " + value.str() + " < 0");
}

void StabilityReport::mark_invalid(std::string reason_text) {
  verdict = Verdict::InvalidConfig;
  witness.reset();
  reason = std::move(reason_text);
}

std::optional<RealInterval> meet(const RealInterval& a, const RealInterval& b) {
  RealInterval out = a;
  int lo_cmp = compare(a.lo, b.lo);
  if (lo_cmp < 0 || (lo_cmp == 0 && b.lo_open)) {
    out.lo = b.lo;
    out.lo_open = b.lo_open;
  }
  int hi_cmp = compare(a.hi, b.hi);
  if (hi_cmp > 0 || (hi_cmp == 0 && b.hi_open)) {
    out.hi = b.hi;
    out.hi_open = b.hi_open;
  }
  int span = compare(out.lo, out.hi);
  if (span > 0 || (span == 0 && (out.lo_open || out.hi_open))) return std::nullopt;
  return out;
}

Interval rational_hull(const RealInterval& r) {
  bool lo_open = r.lo.is_exact() ? r.lo_open : false;
  bool hi_open = r.hi.is_exact() ? r.hi_open : false;
  return Interval(r.lo.isolating_interval.lo(), r.hi.isolating_interval.hi(), lo_open, hi_open);
}

namespace {

int sign_at(const MPoly& f, const Rational& x) { return evaluate(f, {{Symbol::beta(), x}}).sign(); }

// A point of the open segment (lo, hi) where f does not vanish.
Rational nonroot_sample(const MPoly& f, const RealInterval& seg) {
  Rational s = seg.sample();
  while (sign_at(f, s) == 0) s = rational_between(s, seg.hi);
  return s;
}

bool vanishes_at(const std::vector<AlgebraicRoot>& roots, const AlgebraicRoot& x) {
  for (const auto& r : roots) {
    if (compare(r, x) == 0) return true;
  }
  return false;
}

}  // namespace

BetaRanges unstable_beta_range(const MPoly& f, const RealInterval& window) {
  BetaRanges out;
  if (f.is_zero()) {
    out.identically_zero = true;
    return out;
  }
  for (Symbol s : f.occurring_variables()) {
    if (s != Symbol::beta()) throw NotUnivariateError("expected a polynomial in b alone, got " + f.str());
  }
  if (auto k = f.as_constant()) {
    if (k->sign() < 0) out.ranges.push_back(window);
    return out;
  }
  Interval hull = Interval::closed(window.lo.isolating_interval.lo(), window.hi.isolating_interval.hi());
  for (auto& r : isolate_real_roots(f, hull)) {
    int lo_cmp = compare(r, window.lo);
    int hi_cmp = compare(r, window.hi);
    bool inside = (lo_cmp > 0 || (lo_cmp == 0 && !window.lo_open)) && (hi_cmp < 0 || (hi_cmp == 0 && !window.hi_open));
    if (inside) out.roots.push_back(r);
  }
  for (const auto& r : out.roots) {
    if (r.crosses()) out.thresholds.push_back(r);
  }

  AlgebraicRoot lo = window.lo;
  bool lo_open = window.lo_open || vanishes_at(out.roots, window.lo);
  auto emit = [&](const AlgebraicRoot& hi, bool hi_open) {
    if (compare(lo, hi) >= 0) return;
    RealInterval seg{lo, hi, lo_open, hi_open};
    if (sign_at(f, nonroot_sample(f, seg)) < 0) out.ranges.push_back(seg);
  };
  for (const auto& t : out.thresholds) {
    emit(t, true);
    lo = t;
    lo_open = true;
  }
  emit(window.hi, window.hi_open || vanishes_at(out.roots, window.hi));
  return out;
}

BetaRanges unstable_beta_range(const MPoly& f, const Interval& window) {
  return unstable_beta_range(f, RealInterval::from(window));
}

namespace {

MPoly subst(MPoly p, Symbol var, const MPoly& q) {
  p.declare(var);
  MPoly out = substitute(p, var, q);
  out.prune_variables();
  out.declare(Symbol::beta());
  return out;
}

std::string describe(const DNCConfig& config) {
  return config.pair()->name() + ", Z = " + config.z().str() + (config.z_is_boundary() ? " (Z = C)" : " (Z != C)") +
         ", L = " + config.polarization().str();
}

FutakiPoly futaki_for(const DNCConfig& config) {
  return has_log_polarization(config) ? slope_futaki(config) : general_futaki(config);
}

const RealInterval& require_region(const AmpRegion& amp, const std::string& name) {
  if (!amp.region) throw OutOfRangeError("pair '" + name + "' has an empty ample region");
  return *amp.region;
}

// Upper end of the usable c-window at a rational b. When the
// self-intersection condition cuts in first, a rational below its first
// root is used, which keeps the window inside the true one.
Rational window_upper(const SeshadriPiece& piece, const Rational& beta, std::vector<std::string>& notes) {
  Rational eps = evaluate(piece.epsilon, {{Symbol::beta(), beta}});
  if (!piece.quadratic_binds) return eps;
  MPoly q = partial_evaluate(piece.quadratic, {{Symbol::beta(), beta}});
  if (q.is_zero() || q.as_constant()) return eps;
  auto roots = isolate_real_roots(q, Interval::open(0, eps));
  if (roots.empty()) return eps;
  Rational upper = roots.front().is_exact() ? *roots.front().exact_value() : roots.front().isolating_interval.lo();
  notes.push_back("(L-cZ)^2 > 0 binds before the generator bound at b = " + beta.str() + "; c-window capped at " +
                  upper.str());
  return upper;
}

std::optional<Rational> c_witness(const FutakiPoly& f, const Rational& beta, const Rational& upper) {
  MPoly fc = partial_evaluate(f.value, {{Symbol::beta(), beta}});
  if (fc.is_zero()) return std::nullopt;
  if (auto k = fc.as_constant()) {
    if (k->sign() < 0) return midpoint(Rational(0), upper);
    return std::nullopt;
  }
  return sign_on_interval(fc, Interval::open(0, upper)).negative_witness;
}

}  // namespace

StabilityReport slope_verdict(const DNCConfig& config, const Rational& beta) {
  StabilityReport r;
  r.pipeline = "slope";
  r.configuration = describe(config);
  AmpRegion amp = amp_region(*config.pair());
  const RealInterval& region = require_region(amp, config.pair()->name());
  if (!region.contains(beta)) {
    throw OutOfRangeError("b = " + beta.str() + " is outside the ample region " + region.str());
  }
  r.certificates = amp.certificate;
  r.futaki = futaki_for(config);

  SeshadriResult ses = p_ample_window(config, Interval::point(beta));
  if (ses.unbounded || ses.pieces.empty()) {
    r.window.unbounded = true;
    r.mark_invalid("Z meets no Mori generator positively: the c-window is unbounded");
    return r;
  }
  const SeshadriPiece& piece = ses.pieces.front();
  Rational upper = window_upper(piece, beta, r.notes);
  r.window.pieces.push_back(WindowPiece{Interval::point(beta), MPoly(0), MPoly(upper)});
  r.c_rule = "c = epsilon(b) = " + piece.epsilon.str();
  r.reduced = subst(r.futaki.value, Symbol::c(), piece.epsilon);

  Rational eps = evaluate(piece.epsilon, {{Symbol::beta(), beta}});
  Rational probe = evaluate(r.futaki.value, {{Symbol::beta(), beta}, {Symbol::c(), eps}});
  r.certificates.push_back("probe F(" + beta.str() + ", epsilon = " + eps.str() + ") = " + probe.str());

  if (auto c = c_witness(r.futaki, beta, upper)) {
    r.mark_unstable(beta, *c, "F < 0 inside the p-ample window");
  } else {
    r.verdict = Verdict::NotDestabilized;
    r.reason = "F >= 0 for every c in (0, " + upper.str() + ") at b = " + beta.str();
  }
  return r;
}

StabilityReport slope_verdict(const DNCConfig& config) {
  StabilityReport r;
  r.pipeline = "slope";
  r.configuration = describe(config);
  AmpRegion amp = amp_region(*config.pair());
  const RealInterval& region = require_region(amp, config.pair()->name());
  r.certificates = amp.certificate;
  r.futaki = futaki_for(config);
  r.c_rule = "c = epsilon(b)";

  SeshadriResult ses = p_ample_window(config, rational_hull(region));
  if (ses.unbounded || ses.pieces.empty()) {
    r.window.unbounded = true;
    r.mark_invalid("Z meets no Mori generator positively: the c-window is unbounded");
    return r;
  }
  for (const auto& piece : ses.pieces) {
    r.window.pieces.push_back(WindowPiece{piece.beta_range, MPoly(0), piece.epsilon});
    if (piece.quadratic_binds) {
      r.notes.push_back("(L-cZ)^2 > 0 binds before the generator bound on b in " + piece.beta_range.str());
    }
    MPoly reduced = subst(r.futaki.value, Symbol::c(), piece.epsilon);
    if (ses.pieces.size() == 1) r.reduced = reduced;
    auto part = meet(RealInterval::from(piece.beta_range), region);
    if (!part) continue;
    BetaRanges br = unstable_beta_range(reduced, *part);
    if (br.identically_zero) r.notes.push_back("F(b, epsilon) vanishes identically on b in " + piece.beta_range.str());
    r.thresholds.insert(r.thresholds.end(), br.thresholds.begin(), br.thresholds.end());
    r.beta_unstable_ranges.insert(r.beta_unstable_ranges.end(), br.ranges.begin(), br.ranges.end());
  }
  if (r.reduced && region.lo.is_exact() && region.lo.exact_value()->is_zero()) {
    r.limit_at_zero = limit_at_zero_plus(*r.reduced, Symbol::beta());
  }
  if (r.beta_unstable_ranges.empty()) {
    r.verdict = Verdict::NotDestabilized;
    r.reason = "F(b, epsilon(b)) >= 0 on the ample region";
    return r;
  }
  const RealInterval& first = r.beta_unstable_ranges.front();
  if (first.lo.is_exact() && first.lo.exact_value()->is_zero()) {
    r.beta0 = first.hi.is_exact() ? *first.hi.exact_value() : first.hi.isolating_interval.lo();
  }
  Rational beta = first.sample();
  for (const auto& piece : ses.pieces) {
    if (!piece.beta_range.contains(beta)) continue;
    Rational upper = window_upper(piece, beta, r.notes);
    if (auto c = c_witness(r.futaki, beta, upper)) {
      r.mark_unstable(beta, *c, "F(b, epsilon(b)) < 0 on " + first.str());
      return r;
    }
  }
  r.verdict = Verdict::NotDestabilized;
  r.reason = "F(b, epsilon(b)) < 0 on " + first.str() + " but no rational c witness was found inside the window";
  return r;
}

}  // namespace flopslope
