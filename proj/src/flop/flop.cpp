#include "flopslope/flop/flop.hpp"

#include <algorithm>
#include <set>

namespace flopslope {

FlopSpec flop_spec_from(const SurfacePair& blown, const BetaClass& l_prime) {
  const Provenance& prov = blown.provenance();
  if (!prov.parent || prov.exceptional_indices.empty()) {
    throw ConstructionError("pair '" + blown.name() + "' records no blow-up to flop");
  }
  require_same_lattice(blown.lattice(), l_prime.lattice());
  FlopSpec spec;
  for (std::size_t i = 0; i < prov.exceptional_indices.size(); ++i) {
    DivisorClass e = blown.lattice()->basis(prov.exceptional_indices[i]);
    MPoly delta = intersect(l_prime, e);
    delta.declare(Symbol::beta());
    spec.curves.push_back(e);
    spec.deltas.push_back(delta);
    spec.incidence.push_back(i < prov.points.size() ? prov.points[i] : BlowupPoint{});
  }
  spec.d_prime_dot_ci.assign(spec.curves.size(), std::nullopt);
  return spec;
}

FlopSpec flop_spec_from(const DNCConfig& config_prime) {
  return flop_spec_from(*config_prime.pair(), config_prime.polarization());
}

namespace {

Rational constant_of(const MPoly& p, const std::string& what) {
  auto k = p.as_constant();
  if (!k) throw ConstructionError(what + " is not a number: " + p.str());
  return *k;
}

MPoly with_vars(MPoly p) {
  p.declare(Symbol::beta());
  p.declare(Symbol::c());
  return p;
}

void check_sizes(const FlopSpec& spec) {
  std::size_t r = spec.r();
  if (spec.deltas.size() != r || spec.incidence.size() != r ||
      (!spec.d_prime_dot_ci.empty() && spec.d_prime_dot_ci.size() != r)) {
    throw ConstructionError("flop spec lists " + std::to_string(r) + " curves but " +
                            std::to_string(spec.deltas.size()) + " deltas, " + std::to_string(spec.incidence.size()) +
                            " incidences and " + std::to_string(spec.d_prime_dot_ci.size()) + " D'.C_i values");
  }
}

}  // namespace

std::vector<FlopPairing> flop_curve_pairings(const DNCConfig& config_prime, const FlopSpec& spec) {
  check_sizes(spec);
  std::vector<FlopPairing> out;
  ThreefoldClass lx = config_prime.test_polarization();
  ThreefoldClass dx = config_prime.boundary();
  ThreefoldClass kx = config_prime.canonical();
  for (std::size_t i = 0; i < spec.r(); ++i) {
    std::string name = "C_" + std::to_string(i + 1);
    if (!spec.incidence[i].on_z) {
      throw ConstructionError("point O_" + std::to_string(i + 1) + " is not on Z; flopped curves need O_i in Z");
    }
    const DivisorClass& e = spec.curves[i];
    require_same_lattice(config_prime.pair()->lattice(), e.lattice());
    FlopPairing p;
    p.k_dot = constant_of(config_prime.curve_pairing(kx, e), "K_X'." + name);
    if (!p.k_dot.is_zero()) {
      throw ConstructionError("K_X'." + name + " = " + p.k_dot.str() + " != 0: the point does not lie on Z simply");
    }
    MPoly delta = intersect(config_prime.polarization(), e);
    if (!(with_vars(delta) == with_vars(spec.deltas[i]))) {
      throw ConstructionError("delta_" + std::to_string(i + 1) + " = " + spec.deltas[i].str() + " but L'." + name +
                              " = " + delta.str());
    }
    p.l_dot = with_vars(config_prime.curve_pairing(lx, e));
    p.d_dot = constant_of(config_prime.curve_pairing(dx, e), "D'." + name);
    if (!spec.d_prime_dot_ci.empty() && spec.d_prime_dot_ci[i]) {
      const Rational& v = *spec.d_prime_dot_ci[i];
      if (v.sign() < 0 || !v.is_integer()) {
        throw InvalidConfigError("D'." + name + " override " + v.str() + " is not a nonnegative integer");
      }
      p.d_dot = v;
      p.d_overridden = true;
    }
    out.push_back(std::move(p));
  }
  return out;
}

MPoly flop_triple_product(const FlopTriple& t) {
  MPoly out = t.base;
  for (const auto& r : t.r_values) out -= r[0] * r[1] * r[2];
  return out;
}

Rational blowup_oracle_flopped_degree(const Rational& m, const Rational& r) {
  // (c^*H - m E + m^ E).E^2 with c^*H.E^2 = -r and E^3 = 2, negated
  Rational m_hat = r + m;
  Rational e_coeff = m_hat - m;
  return -(-r + e_coeff * 2);
}

Rational blowup_oracle_triple(const std::array<Rational, 3>& m, const std::array<Rational, 3>& r, const Rational& base) {
  std::array<Rational, 3> e;
  for (int i = 0; i < 3; ++i) {
    Rational m_hat = r[i] + m[i];
    e[i] = m_hat - m[i];
  }
  // expand prod (c^*H_i + e_i E)
  Rational out = base;
  out += e[0] * e[1] * -r[2];
  out += e[0] * e[2] * -r[1];
  out += e[1] * e[2] * -r[0];
  out += e[0] * e[1] * e[2] * 2;
  return out;
}

FutakiPoly flop_futaki(const DNCConfig& config_prime, const FlopSpec& spec) {
  auto pairings = flop_curve_pairings(config_prime, spec);
  bool log = has_log_polarization(config_prime);
  FutakiPoly base = log ? slope_futaki(config_prime) : general_futaki(config_prime);
  // over the denominator L^2 the cubic term carries mu, which is L^2 itself
  // for the log polarization
  MPoly cubic_weight = log ? MPoly(1) : futaki_mu(config_prime, config_prime.polarization());
  MPoly one_minus_b = MPoly(1) - MPoly::variable(Symbol::beta());
  MPoly cubes;
  MPoly squares;
  for (const auto& p : pairings) {
    cubes += p.l_dot * p.l_dot * p.l_dot;
    squares += one_minus_b * p.l_dot * p.l_dot * MPoly(p.d_dot);
  }
  FutakiPoly out = base;
  out.value = with_vars(base.value - MPoly(2) * cubic_weight * cubes - MPoly(3) * base.denominator * squares);
  out.provenance = FutakiSource::FlopCorrection;
  return out;
}

FutakiPoly flop_futaki_trilinear(const DNCConfig& config_prime, const FlopSpec& spec) {
  auto pairings = flop_curve_pairings(config_prime, spec);
  const BetaClass& l = config_prime.polarization();
  MPoly one_minus_b = MPoly(1) - MPoly::variable(Symbol::beta());
  MPoly l_sq = intersect(l, l);
  if (l_sq.is_zero()) throw DegeneratePolarizationError("L^2 vanishes identically for L = " + l.str());
  MPoly mu = futaki_mu(config_prime, l);

  ThreefoldClass lx = config_prime.test_polarization();
  ThreefoldClass twist = config_prime.relative_canonical() + one_minus_b * config_prime.boundary();
  std::vector<MPoly> l_dot;
  std::vector<MPoly> twist_dot;
  for (std::size_t i = 0; i < spec.r(); ++i) {
    l_dot.push_back(config_prime.curve_pairing(lx, spec.curves[i]));
    MPoly k_part = config_prime.curve_pairing(config_prime.relative_canonical(), spec.curves[i]);
    twist_dot.push_back(k_part + one_minus_b * MPoly(pairings[i].d_dot));
  }
  FlopTriple lll{config_prime.triple(lx, lx, lx), {}};
  FlopTriple tll{config_prime.triple(twist, lx, lx), {}};
  for (std::size_t i = 0; i < spec.r(); ++i) {
    lll.r_values.push_back({l_dot[i], l_dot[i], l_dot[i]});
    tll.r_values.push_back({twist_dot[i], l_dot[i], l_dot[i]});
  }
  FutakiPoly out;
  out.value = with_vars(MPoly(2) * mu * flop_triple_product(lll) + MPoly(3) * l_sq * flop_triple_product(tll));
  out.denominator = l_sq;
  out.denominator.declare(Symbol::beta());
  out.branch = config_prime.z_is_boundary() ? FutakiBranch::ZIsBoundary : FutakiBranch::ZNotBoundary;
  out.provenance = FutakiSource::FlopTrilinear;
  return out;
}

namespace {

Rational at(const MPoly& p, const Rational& beta) {
  return partial_evaluate(p, {{Symbol::beta(), beta}}).constant_term();
}

const SeshadriPiece* piece_at(const SeshadriResult& s, const Rational& beta) {
  for (const auto& p : s.pieces) {
    if (p.beta_range.contains(beta)) return &p;
  }
  return nullptr;
}

void add_crossing(std::set<Rational>& cuts, const MPoly& a, const MPoly& b, const Interval& window) {
  MPoly d = a - b;
  d.declare(Symbol::beta());
  Rational slope = d.coefficient(Symbol::beta(), 1).constant_term();
  if (slope.is_zero()) return;
  Rational root = -d.coefficient(Symbol::beta(), 0).constant_term() / slope;
  if (window.lo() < root && root < window.hi()) cuts.insert(root);
}

}  // namespace

FlopWindow flop_window(const SurfacePair& pair, const SurfacePair& pair_prime, const DivisorClass& z,
                       const FlopSpec& spec, const Interval& beta_window) {
  FlopWindow out;
  if (!pair_prime.z()) throw ConstructionError("pair '" + pair_prime.name() + "' carries no Z'");
  for (const auto& d : spec.deltas) {
    bool only_b = true;
    for (Symbol v : d.occurring_variables()) only_b = only_b && v == Symbol::beta();
    if (!only_b || d.degree() > 1) {
      throw InvalidConfigError("flop window needs deltas linear in b, got " + d.str());
    }
  }
  const DivisorClass& z_prime = *pair_prime.z();
  BetaClass l = pair.log_polarization();
  BetaClass l_prime = pair_prime.log_polarization();
  SeshadriResult upper = seshadri(pair, z, l, beta_window);
  SeshadriResult lower = seshadri(pair_prime, z_prime, l_prime, beta_window);
  for (const auto& p : upper.pieces) {
    out.certificates.push_back("eps(S,Z,L_b) = " + p.epsilon.str() + " on b in " + p.beta_range.str() + " (" +
                               p.binding_generator + ")");
  }
  for (const auto& p : lower.pieces) {
    out.certificates.push_back("eps(S',Z',L'_b) = " + p.epsilon.str() + " on b in " + p.beta_range.str() + " (" +
                               p.binding_generator + ")");
  }
  for (std::size_t i = 0; i < spec.deltas.size(); ++i) {
    out.certificates.push_back("delta_" + std::to_string(i + 1) + " = " + spec.deltas[i].str());
  }
  if (upper.unbounded || upper.pieces.empty()) {
    out.certificates.push_back("eps(S,Z,L_b) is unbounded: no upper bound for c");
    return out;
  }

  std::vector<MPoly> funcs;
  std::set<Rational> cuts{beta_window.lo(), beta_window.hi()};
  for (const auto* s : {&upper, &lower}) {
    for (const auto& p : s->pieces) {
      funcs.push_back(p.epsilon);
      if (beta_window.lo() < p.beta_range.lo() && p.beta_range.lo() < beta_window.hi()) cuts.insert(p.beta_range.lo());
    }
  }
  funcs.insert(funcs.end(), spec.deltas.begin(), spec.deltas.end());
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    for (std::size_t j = i + 1; j < funcs.size(); ++j) add_crossing(cuts, funcs[i], funcs[j], beta_window);
  }

  std::vector<Rational> pts(cuts.begin(), cuts.end());
  bool prev_has_hi = false;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Rational& a = pts[k];
    const Rational& b = pts[k + 1];
    Rational s = midpoint(a, b);
    const SeshadriPiece* up = piece_at(upper, s);
    if (!up) {
      prev_has_hi = false;
      continue;
    }
    MPoly lo_f;
    bool have_lo = false;
    if (const SeshadriPiece* lp = piece_at(lower, s)) {
      lo_f = lp->epsilon;
      have_lo = true;
    }
    for (const auto& d : spec.deltas) {
      if (!have_lo || at(d, s) > at(lo_f, s)) {
        lo_f = d;
        have_lo = true;
      }
    }
    if (!have_lo) lo_f = MPoly(0);
    lo_f.declare(Symbol::beta());
    MPoly hi_f = up->epsilon;
    hi_f.declare(Symbol::beta());
    if (!(at(lo_f, s) < at(hi_f, s))) {
      prev_has_hi = false;
      continue;
    }
    bool lo_in = (k == 0 ? !beta_window.lo_open() : !prev_has_hi) && at(lo_f, a) < at(hi_f, a);
    bool hi_in = (k + 2 == pts.size() ? !beta_window.hi_open() : true) && at(lo_f, b) < at(hi_f, b);
    if (!out.pieces.empty() && prev_has_hi && out.pieces.back().lower == lo_f && out.pieces.back().upper == hi_f &&
        out.pieces.back().beta_range.hi() == a) {
      auto& last = out.pieces.back();
      last.beta_range = Interval(last.beta_range.lo(), b, last.beta_range.lo_open(), !hi_in);
    } else {
      out.pieces.push_back(WindowPiece{Interval(a, b, !lo_in, !hi_in), lo_f, hi_f});
    }
    prev_has_hi = hi_in;
  }
  PseffCertificate cert = pseff_threshold_certificate(pair_prime, z_prime, l_prime, beta_window);
  for (const auto& line : cert.lines) out.certificates.push_back(line);
  if (cert.status == CertificateStatus::Unknown) out.certificates.push_back("bigness of L'-cZ' not certified");
  return out;
}

}  // namespace flopslope
