#include "flopslope/analyzer/analyzer.hpp"

namespace flopslope {

namespace {

MPoly bvar() { return MPoly::variable(Symbol::beta()); }
MPoly cvar() { return MPoly::variable(Symbol::c()); }

MPoly with_vars(MPoly p) {
  p.declare(Symbol::beta());
  p.declare(Symbol::c());
  return p;
}

MPoly in_b(MPoly p) {
  p.declare(Symbol::beta());
  return p;
}

MPoly subst_c(const MPoly& f, const MPoly& rule) {
  MPoly g = f;
  g.declare(Symbol::c());
  return in_b(substitute(g, Symbol::c(), rule).prune_variables());
}

Rational at_b(const MPoly& p, const Rational& beta) {
  return partial_evaluate(p, {{Symbol::beta(), beta}}).constant_term();
}

bool is_zero_at(const RealInterval& r) { return r.lo.is_exact() && r.lo.exact_value()->is_zero(); }

// Adds the negative ranges of `reduced` on each b-range.
void add_ranges(StabilityReport& r, const MPoly& reduced, const std::vector<RealInterval>& windows) {
  for (const auto& w : windows) {
    BetaRanges br = unstable_beta_range(reduced, w);
    if (br.identically_zero) r.notes.push_back("reduced F vanishes identically on b in " + w.str());
    r.thresholds.insert(r.thresholds.end(), br.thresholds.begin(), br.thresholds.end());
    r.beta_unstable_ranges.insert(r.beta_unstable_ranges.end(), br.ranges.begin(), br.ranges.end());
  }
}

void set_beta0(StabilityReport& r) {
  if (r.beta_unstable_ranges.empty()) return;
  const RealInterval& first = r.beta_unstable_ranges.front();
  if (!is_zero_at(first)) return;
  r.beta0 = first.hi.is_exact() ? *first.hi.exact_value() : first.hi.isolating_interval.lo();
  r.certificates.push_back("F < 0 for b in (0, " + r.beta0->str() + ")");
}

// Looks for (b, c) with F < 0 inside the window, trying the c rule first.
bool find_witness(StabilityReport& r, const std::optional<MPoly>& rule, const std::string& why) {
  for (const auto& range : r.beta_unstable_ranges) {
    Rational beta = range.sample();
    const WindowPiece* piece = r.window.at(beta);
    if (!piece) continue;
    Rational lo = at_b(piece->lower, beta);
    Rational hi = at_b(piece->upper, beta);
    if (!(lo < hi)) continue;
    Assignment ab{{Symbol::beta(), beta}};
    if (rule) {
      Rational c = at_b(*rule, beta);
      if (lo < c && c < hi && evaluate(r.futaki.value, {{Symbol::beta(), beta}, {Symbol::c(), c}}).sign() < 0) {
        r.mark_unstable(beta, c, why);
        return true;
      }
    }
    MPoly fc = partial_evaluate(r.futaki.value, ab);
    std::optional<Rational> c;
    if (auto k = fc.as_constant()) {
      if (k->sign() < 0) c = midpoint(lo, hi);
    } else {
      c = sign_on_interval(fc, Interval::open(lo, hi)).negative_witness;
    }
    if (c) {
      r.mark_unstable(beta, *c, why);
      return true;
    }
  }
  return false;
}

void conclude(StabilityReport& r, const std::optional<MPoly>& rule, const std::string& why) {
  set_beta0(r);
  if (find_witness(r, rule, why)) return;
  r.verdict = Verdict::NotDestabilized;
  r.reason = r.beta_unstable_ranges.empty() ? "the reduced Futaki polynomial is nonnegative on the admissible b-range"
                                            : "no rational witness (b, c) with F < 0 inside the window";
}

bool is_maeda(const SurfacePair& pair, std::vector<std::string>* lines = nullptr) {
  AmpleCertificate cert = is_ample(pair, -pair.canonical() - pair.boundary());
  if (lines) {
    for (const auto& l : cert.lines) lines->push_back("-K-C: " + l);
  }
  return cert.ample;
}

void require_rational_boundary(const SurfacePair& pair) {
  Integer g = adjunction_genus(pair, pair.boundary());
  if (g != 0) throw InvalidConfigError("boundary of '" + pair.name() + "' has genus " + g.str() + ", not 0");
}

void require_gamma(const SurfacePair& pair, const Rational& gamma) {
  Rational eps = boundary_seshadri(pair);
  if (gamma.sign() <= 0 || gamma >= eps) {
    throw OutOfRangeError("gamma = " + gamma.str() + " is outside (0, " + eps.str() + ")");
  }
}

// b-ranges where lower(b) < value < upper(b) on each window piece, inside region.
std::vector<RealInterval> admissible(const CWindow& w, const MPoly& value, const RealInterval& region) {
  std::vector<RealInterval> out;
  for (const auto& piece : w.pieces) {
    auto base = meet(RealInterval::from(piece.beta_range), region);
    if (!base) continue;
    for (const auto& below : unstable_beta_range(in_b(piece.lower - value), *base).ranges) {
      for (const auto& above : unstable_beta_range(in_b(value - piece.upper), below).ranges) out.push_back(above);
    }
  }
  return out;
}

std::string describe_pair(const SurfacePair& p) {
  return p.name() + " with C = " + p.boundary().str() + (p.z() ? ", Z = " + p.z()->str() : "");
}

}  // namespace

Rational boundary_seshadri(const SurfacePair& pair) {
  DivisorClass mkc = -pair.canonical() - pair.boundary();
  SeshadriResult s = seshadri(pair, pair.boundary(), BetaClass(mkc, pair.lattice()->zero()));
  if (s.unbounded || s.pieces.empty()) throw InvalidConfigError("epsilon(S, C, -K-C) is unbounded for " + pair.name());
  return evaluate(s.pieces.front().epsilon, {{Symbol::beta(), Rational(0)}});
}

Rational default_gamma(const SurfacePair& pair) { return midpoint(Rational(0), boundary_seshadri(pair)); }

StabilityReport maeda_destabilize(const PairPtr& pair, const Rational& gamma) {
  StabilityReport r;
  r.pipeline = "maeda";
  r.configuration = describe_pair(*pair) + ", Z = C";
  if (!is_maeda(*pair, &r.certificates)) {
    r.mark_invalid("-K-C is not ample");
    return r;
  }
  require_rational_boundary(*pair);
  require_gamma(*pair, gamma);

  DNCConfig config = DNCConfig::log_fano(pair, pair->boundary());
  r.futaki = slope_futaki(config);
  MPoly g(gamma);
  r.c_rule = "c = " + gamma.str();
  r.reduced = subst_c(r.futaki.value, g);

  BetaClass l = pair->log_polarization();
  MPoly lc = intersect(l, pair->boundary());
  MPoly cc(intersect(pair->boundary(), pair->boundary()));
  r.bound = in_b(MPoly(-2) * g * g + bvar() * (MPoly(6) * g * lc - MPoly(4) * g * g * cc));
  MPoly gap = in_b(MPoly(-2) * g * g * (lc - g * cc));
  if (in_b(*r.reduced - *r.bound) == gap) {
    r.certificates.push_back("F(b, " + gamma.str() + ") - bound = " + gap.str() + " = -2g^2 (L_b - gC).C");
  }

  AmpRegion amp = amp_region(*pair);
  if (!amp.region) {
    r.mark_invalid("empty ample region");
    return r;
  }
  for (const auto& line : amp.certificate) r.certificates.push_back(line);
  SeshadriResult ses = p_ample_window(config, rational_hull(*amp.region));
  for (const auto& p : ses.pieces) r.window.pieces.push_back(WindowPiece{p.beta_range, MPoly(0), in_b(p.epsilon)});
  if (is_zero_at(*amp.region)) r.limit_at_zero = limit_at_zero_plus(*r.reduced, Symbol::beta());

  add_ranges(r, *r.reduced, admissible(r.window, g, *amp.region));
  conclude(r, g, "F(b, gamma) < 0 with gamma inside the p-ample window");
  return r;
}

StabilityReport slope_rule_verdict(const DNCConfig& config, const MPoly& c_rule) {
  StabilityReport r;
  r.pipeline = "slope";
  r.configuration = describe_pair(*config.pair()) + ", Z = " + config.z().str() +
                    (config.z_is_boundary() ? " (Z = C)" : " (Z != C)");
  AmpRegion amp = amp_region(*config.pair());
  if (!amp.region) throw OutOfRangeError("pair '" + config.pair()->name() + "' has an empty ample region");
  r.certificates = amp.certificate;
  r.futaki = has_log_polarization(config) ? slope_futaki(config) : general_futaki(config);
  MPoly rule = in_b(MPoly(c_rule).prune_variables());
  if (rule.degree_in(Symbol::c()) > 0) throw InvalidConfigError("c rule " + c_rule.str() + " must not involve c");
  r.c_rule = "c = " + rule.str();
  r.reduced = subst_c(r.futaki.value, rule);

  SeshadriResult ses = p_ample_window(config, rational_hull(*amp.region));
  if (ses.unbounded || ses.pieces.empty()) {
    r.window.unbounded = true;
    r.mark_invalid("Z meets no Mori generator positively: the c-window is unbounded");
    return r;
  }
  for (const auto& p : ses.pieces) {
    r.window.pieces.push_back(WindowPiece{p.beta_range, MPoly(0), in_b(p.epsilon)});
    if (p.quadratic_binds) r.notes.push_back("(L-cZ)^2 > 0 binds before the generator bound on b in " + p.beta_range.str());
  }
  if (is_zero_at(*amp.region)) r.limit_at_zero = limit_at_zero_plus(*r.reduced, Symbol::beta());
  std::vector<RealInterval> ok = admissible(r.window, rule, *amp.region);
  if (ok.empty()) r.notes.push_back("the c rule leaves the p-ample window for every b in the ample region");
  add_ranges(r, *r.reduced, ok);
  conclude(r, rule, "F(b, c(b)) < 0 inside the p-ample window");
  return r;
}

MPoly futaki_long_eq(const SurfacePair& parent, int r, const MPoly& gamma) {
  MPoly b = bvar();
  MPoly rr(r);
  MPoly lc = intersect(parent.log_polarization(), parent.boundary());
  MPoly cc(intersect(parent.boundary(), parent.boundary()));
  MPoly lc_prime = lc - rr * b;
  MPoly cc_prime = cc - rr;
  MPoly g2 = gamma * gamma;
  MPoly inner = MPoly(6) * gamma * lc_prime - MPoly(4) * g2 * cc_prime - MPoly(4) * rr * g2 +
                MPoly(6) * rr * b * gamma - MPoly(2) * rr * b * b;
  return with_vars(MPoly(-2) * g2 - MPoly(2) * g2 * (lc - gamma * cc) + b * inner);
}

MPoly restrict_eq_bound(const SurfacePair& parent, int r, const MPoly& gamma) {
  MPoly lc = intersect(parent.log_polarization(), parent.boundary());
  MPoly cc(intersect(parent.boundary(), parent.boundary()));
  return with_vars(futaki_long_eq(parent, r, gamma) + MPoly(2) * gamma * gamma * (lc - gamma * cc));
}

MPoly flop_parent_form(const SurfacePair& parent, const DivisorClass& parent_z, bool z_is_boundary,
                       const std::vector<BlowupPoint>& points) {
  MPoly b = bvar();
  MPoly c = cvar();
  MPoly lz = intersect(parent.log_polarization(), parent_z);
  Rational zz = intersect(parent_z, parent_z);
  MPoly correction;
  for (const auto& p : points) {
    MPoly delta = p.on_boundary ? b : MPoly(1);
    Rational m = p.on_z ? 1 : 0;
    lz -= delta * MPoly(m);
    zz -= m * m;
    if (!p.on_z) continue;
    Rational d = Rational(p.on_boundary ? 1 : 0) - (z_is_boundary ? m : Rational(0));
    MPoly l_dot = delta - c;
    correction += MPoly(2) * l_dot * l_dot * l_dot + MPoly(3) * (MPoly(1) - b) * l_dot * l_dot * MPoly(d);
  }
  MPoly c2 = c * c;
  MPoly slope = z_is_boundary
                    ? (MPoly(6) * b * c - MPoly(3) * c2) * lz + (MPoly(2) * c2 * c - MPoly(3) * c2 * b) * MPoly(zz)
                    : (MPoly(6) * c - MPoly(3) * c2) * lz + (MPoly(2) * c2 * c - MPoly(3) * c2) * MPoly(zz);
  return with_vars(slope - correction);
}

namespace {

struct Presentation {
  const SurfacePair* parent = nullptr;
  DivisorClass parent_z;
};

std::optional<Presentation> presentation_of(const SurfacePair& p) {
  const Provenance& prov = p.provenance();
  if (!prov.parent || !prov.parent_z || prov.exceptional_indices.empty()) return std::nullopt;
  return Presentation{prov.parent.get(), *prov.parent_z};
}

}  // namespace

StabilityReport flop_slope_verdict(const PairPtr& pair_prime, const std::optional<MPoly>& c_rule,
                                   const std::vector<std::optional<Rational>>& d_prime_override) {
  StabilityReport r;
  r.pipeline = "flop";
  r.configuration = describe_pair(*pair_prime);
  auto pres = presentation_of(*pair_prime);
  if (!pres || !pair_prime->z()) {
    r.mark_invalid("pair '" + pair_prime->name() + "' has no recorded blow-up presentation with Z");
    return r;
  }
  DNCConfig config = DNCConfig::log_fano(pair_prime, *pair_prime->z());
  FlopSpec spec = flop_spec_from(config);
  if (!d_prime_override.empty()) {
    if (d_prime_override.size() != spec.r()) {
      throw InvalidConfigError("D'.C_i override lists " + std::to_string(d_prime_override.size()) + " values for " +
                               std::to_string(spec.r()) + " curves");
    }
    spec.d_prime_dot_ci = d_prime_override;
    r.notes.push_back("D'.C_i values overridden by the caller");
  }
  r.futaki = flop_futaki(config, spec);
  if (d_prime_override.empty()) {
    MPoly parent_form =
        flop_parent_form(*pres->parent, pres->parent_z, config.z_is_boundary(), pair_prime->provenance().points);
    if (with_vars(r.futaki.denominator * parent_form) == r.futaki.value) {
      r.certificates.push_back("flopped F agrees with the closed form from " + pres->parent->name() + ": " +
                               parent_form.str());
    } else {
      r.notes.push_back("flopped F differs from the closed form from the parent: " + parent_form.str());
    }
  }

  FlopWindow fw = flop_window(*pres->parent, *pair_prime, pres->parent_z, spec);
  for (const auto& line : fw.certificates) r.certificates.push_back(line);
  r.window = fw.as_window();
  if (fw.empty()) {
    r.mark_invalid("the flop window is empty");
    return r;
  }
  AmpRegion amp = amp_region(*pair_prime);
  if (!amp.region) {
    r.mark_invalid("empty ample region");
    return r;
  }
  for (const auto& line : amp.certificate) r.certificates.push_back(line);

  r.c_rule = c_rule ? "c = " + c_rule->str() : "c = eps(S,Z,L_b)";
  for (const auto& piece : fw.pieces) {
    MPoly rule = c_rule ? *c_rule : piece.upper;
    if (!c_rule) r.c_rule += (fw.pieces.size() > 1 ? "; " : " = ") + piece.upper.str();
    MPoly reduced = subst_c(r.futaki.value, rule);
    if (!r.reduced) r.reduced = reduced;
    auto part = meet(RealInterval::from(piece.beta_range), *amp.region);
    if (part) add_ranges(r, reduced, {*part});
  }
  if (fw.pieces.size() > 1 && !c_rule) r.reduced.reset();
  if (r.reduced && is_zero_at(*amp.region)) r.limit_at_zero = limit_at_zero_plus(*r.reduced, Symbol::beta());
  conclude(r, c_rule, "flopped F < 0 inside the flop window");
  return r;
}

StabilityReport flop_destabilize(const PairPtr& pair_prime, const Rational& gamma, const std::optional<MPoly>& c_rule) {
  StabilityReport r;
  r.pipeline = "flop-destabilize";
  r.configuration = describe_pair(*pair_prime) + ", Z = C'";
  auto pres = presentation_of(*pair_prime);
  if (!pres) {
    r.mark_invalid("pair '" + pair_prime->name() + "' has no recorded blow-up presentation");
    return r;
  }
  const SurfacePair& parent = *pres->parent;
  if (!is_maeda(parent, &r.certificates)) {
    r.mark_invalid("-K-C is not ample on the parent " + parent.name());
    return r;
  }
  const auto& points = pair_prime->provenance().points;
  for (const auto& p : points) {
    if (!p.on_boundary) {
      r.mark_invalid("a blown-up point is off the boundary");
      return r;
    }
  }
  require_rational_boundary(parent);
  require_gamma(parent, gamma);
  int count = static_cast<int>(points.size());

  DNCConfig config = DNCConfig::log_fano(pair_prime, pair_prime->boundary());
  FlopSpec spec = flop_spec_from(config);
  r.futaki = flop_futaki(config, spec);
  MPoly long_eq = futaki_long_eq(parent, count, cvar());
  if (long_eq == r.futaki.value) {
    r.certificates.push_back("flopped F = " + long_eq.str() + " (closed form in the parent's data, g = c)");
  } else {
    r.notes.push_back("flopped F differs from the parent closed form " + long_eq.str());
  }
  MPoly g(gamma);
  MPoly rule = c_rule ? *c_rule : g;
  r.c_rule = "c = " + rule.str();
  r.reduced = subst_c(r.futaki.value, rule);
  r.bound = in_b(restrict_eq_bound(parent, count, g));
  r.certificates.push_back("bound at g = " + gamma.str() + ": " + r.bound->str());

  FlopWindow fw = flop_window(parent, *pair_prime, pres->parent_z, spec);
  for (const auto& line : fw.certificates) r.certificates.push_back(line);
  r.window = fw.as_window();
  if (fw.empty()) throw InvalidConfigError("the flop window is empty");
  AmpRegion amp = amp_region(*pair_prime);
  if (!amp.region) {
    r.mark_invalid("empty ample region");
    return r;
  }
  if (is_zero_at(*amp.region)) r.limit_at_zero = limit_at_zero_plus(*r.reduced, Symbol::beta());

  std::vector<RealInterval> windows;
  if (c_rule) {
    for (const auto& piece : fw.pieces) {
      if (auto part = meet(RealInterval::from(piece.beta_range), *amp.region)) windows.push_back(*part);
    }
  } else {
    windows = admissible(r.window, g, *amp.region);
  }
  add_ranges(r, *r.reduced, windows);
  r.notes.push_back("obstruction holds for every b in Amp(S,C) at which the long-form polynomial is negative");
  conclude(r, rule, "flopped F < 0 inside the flop window");
  return r;
}

StabilityReport theorem_check(const PairPtr& pair_prime, const std::optional<Rational>& gamma) {
  AmpRegion amp = amp_region(*pair_prime);
  StabilityReport r;
  if (!amp.asymptotically_log_fano) {
    r.pipeline = "theorem";
    r.configuration = describe_pair(*pair_prime);
    r.certificates = amp.certificate;
    r.mark_invalid("pair is not asymptotically log del Pezzo");
    return r;
  }
  Rational kc = k_plus_c_squared(*pair_prime);
  std::string kc_line = "(K+C)^2 = " + kc.str();
  if (kc.is_zero()) {
    if (presentation_of(*pair_prime) && pair_prime->z()) {
      r = flop_slope_verdict(pair_prime);
      r.notes.push_back(kc_line + ": the small-b obstruction does not apply; flop pipeline run on the recorded Z");
      if (r.beta0) {
        r.notes.push_back("negativity near b = 0 found, not claimed as a small-b statement");
        r.beta0.reset();
      }
    } else {
      r.configuration = describe_pair(*pair_prime);
      r.verdict = Verdict::NotDestabilized;
      r.reason = kc_line + ": hypothesis fails, no conclusion";
    }
    r.pipeline = "theorem/" + (r.pipeline.empty() ? std::string("none") : r.pipeline);
    r.certificates.insert(r.certificates.begin(), kc_line);
    return r;
  }
  if (is_maeda(*pair_prime)) {
    r = maeda_destabilize(pair_prime, gamma.value_or(default_gamma(*pair_prime)));
    r.notes.push_back("case (i): -K-C is ample");
  } else if (auto pres = presentation_of(*pair_prime); pres && is_maeda(*pres->parent)) {
    r = flop_destabilize(pair_prime, gamma.value_or(default_gamma(*pres->parent)));
    r.notes.push_back("case (ii): blow-up of " + pres->parent->name() + " at points of the boundary");
  } else {
    r.configuration = describe_pair(*pair_prime);
    r.mark_invalid("neither -K-C ample nor a recorded blow-up of such a pair: classification input required");
  }
  r.pipeline = "theorem/" + (r.pipeline.empty() ? std::string("none") : r.pipeline);
  r.certificates.insert(r.certificates.begin(), kc_line);
  return r;
}

}  // namespace flopslope
