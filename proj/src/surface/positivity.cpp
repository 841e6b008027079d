#include "flopslope/surface/positivity.hpp"

#include <algorithm>
#include <set>

namespace flopslope {

AmpleCertificate is_ample(const SurfacePair& pair, const DivisorClass& d) {
  if (pair.mori_generators().empty()) throw EmptyGeneratorListError("pair '" + pair.name() + "' has no Mori generators");
  require_same_lattice(pair.lattice(), d.lattice());
  AmpleCertificate cert;
  cert.self_intersection = intersect(d, d);
  bool square_ok = cert.self_intersection.sign() > 0;
  cert.lines.push_back("D^2 = " + cert.self_intersection.str() + (square_ok ? " > 0" : " <= 0"));
  cert.ample = square_ok;
  for (const auto& g : pair.mori_generators()) {
    Rational v = intersect(d, g.curve);
    bool ok = v.sign() > 0;
    cert.lines.push_back("D." + g.label + " = " + v.str() + (ok ? " > 0" : " <= 0"));
    if (!ok && !cert.failing_generator) cert.failing_generator = g.label;
    cert.ample = cert.ample && ok;
  }
  return cert;
}

namespace {

struct Bound {
  Rational value;
  bool open;
};

// Components of {b in window : p(b) > 0}, lowest first.
std::vector<RealInterval> positive_components(const MPoly& p, const RealInterval& window) {
  std::vector<RealInterval> out;
  if (p.is_zero()) return out;
  auto rational_window = window.as_rational();
  if (p.occurring_variables().empty()) {
    if (p.constant_term().sign() > 0) out.push_back(window);
    return out;
  }
  auto roots = isolate_real_roots(p, *rational_window);
  UPoly u = UPoly::from_mpoly(p, Symbol::beta());
  AlgebraicRoot lo = window.lo;
  bool lo_open = window.lo_open;
  auto emit = [&](const AlgebraicRoot& hi, bool hi_open) {
    RealInterval seg{lo, hi, lo_open, hi_open};
    if (compare(lo, hi) >= 0) return;
    if (u.sign_at(seg.sample()) > 0) out.push_back(seg);
  };
  for (const auto& r : roots) {
    emit(r, true);
    lo = r;
    lo_open = true;
  }
  emit(window.hi, window.hi_open);
  return out;
}

}  // namespace

AmpRegion amp_region(const SurfacePair& pair) {
  if (pair.mori_generators().empty()) throw EmptyGeneratorListError("pair '" + pair.name() + "' has no Mori generators");
  AmpRegion out;
  BetaClass l = pair.log_polarization();
  Bound lo{0, true};
  Bound hi{1, false};
  bool feasible = true;
  for (const auto& g : pair.mori_generators()) {
    Rational a = intersect(l.base, g.curve);
    Rational s = intersect(l.slope, g.curve);
    out.certificate.push_back("L_b." + g.label + " = " + intersect(l, g.curve).str() + " > 0");
    if (s.is_zero()) {
      if (a.sign() <= 0) feasible = false;
      continue;
    }
    Rational root = -a / s;
    if (s.sign() > 0) {
      if (root >= lo.value) lo = {root, true};
    } else {
      if (root <= hi.value) hi = {root, true};
    }
  }
  MPoly square = intersect(l, l);
  out.certificate.push_back("L_b^2 = " + square.str() + " > 0");
  if (!feasible) return out;
  auto linear = Interval::make(lo.value, hi.value, lo.open, hi.open);
  if (!linear) return out;
  auto comps = positive_components(square, RealInterval::from(*linear));
  if (comps.empty()) return out;
  out.region = comps.front();
  out.asymptotically_log_fano = out.region->lo.is_exact() && out.region->lo.exact_value()->is_zero();
  return out;
}

std::optional<MPoly> SeshadriResult::linear() const {
  if (pieces.size() != 1 || pieces.front().quadratic_binds) return std::nullopt;
  return pieces.front().epsilon;
}

std::optional<Rational> SeshadriResult::at(const Rational& beta) const {
  for (const auto& p : pieces) {
    if (p.beta_range.contains(beta)) return evaluate(p.epsilon, {{Symbol::beta(), beta}});
  }
  return std::nullopt;
}

namespace {

Rational eval_at(const MPoly& p, const Rational& beta) {
  MPoly q = partial_evaluate(p, {{Symbol::beta(), beta}});
  return q.constant_term();
}

}  // namespace

SeshadriResult seshadri(const SurfacePair& pair, const DivisorClass& z, const BetaClass& l,
                        const Interval& beta_window) {
  require_same_lattice(pair.lattice(), z.lattice());
  require_same_lattice(pair.lattice(), l.lattice());
  if (z.is_zero()) throw InvalidClassError("Z is the zero class");
  if (pair.mori_generators().empty()) throw EmptyGeneratorListError("pair '" + pair.name() + "' has no Mori generators");

  MPoly c = MPoly::variable(Symbol::c());
  MPoly l_dot_z = intersect(l, z);
  MPoly l_sq = intersect(l, l);
  Rational z_sq = intersect(z, z);
  MPoly quadratic = l_sq - MPoly(2) * c * l_dot_z + MPoly(z_sq) * c * c;
  quadratic.declare(Symbol::beta());
  quadratic.declare(Symbol::c());

  struct Candidate {
    MPoly f;
    std::string label;
  };
  std::vector<Candidate> cands;
  for (const auto& g : pair.mori_generators()) {
    Rational zg = intersect(z, g.curve);
    if (zg.sign() <= 0) continue;
    MPoly f = intersect(l, g.curve) / zg;
    f.declare(Symbol::beta());
    cands.push_back({f, g.label});
  }
  SeshadriResult out;
  if (cands.empty()) {
    out.unbounded = true;
    return out;
  }

  std::set<Rational> breaks;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      MPoly diff = cands[i].f - cands[j].f;
      Rational slope = diff.coefficient(Symbol::beta(), 1).constant_term();
      if (slope.is_zero()) continue;
      Rational root = -diff.coefficient(Symbol::beta(), 0).constant_term() / slope;
      if (beta_window.lo() < root && root < beta_window.hi()) breaks.insert(root);
    }
  }
  std::vector<Rational> cuts{beta_window.lo()};
  cuts.insert(cuts.end(), breaks.begin(), breaks.end());
  cuts.push_back(beta_window.hi());

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational sample = midpoint(cuts[k], cuts[k + 1]);
    const Candidate* best = &cands.front();
    for (const auto& cand : cands) {
      if (eval_at(cand.f, sample) < eval_at(best->f, sample)) best = &cand;
    }
    bool lo_open = k == 0 ? beta_window.lo_open() : true;
    bool hi_open = k + 2 == cuts.size() ? beta_window.hi_open() : false;
    if (!out.pieces.empty() && out.pieces.back().epsilon == best->f) {
      auto& last = out.pieces.back();
      last.beta_range = Interval(last.beta_range.lo(), cuts[k + 1], last.beta_range.lo_open(), hi_open);
    } else {
      SeshadriPiece piece{Interval(cuts[k], cuts[k + 1], lo_open, hi_open), best->f, best->label, false, quadratic};
      out.pieces.push_back(std::move(piece));
    }
  }

  for (auto& piece : out.pieces) {
    MPoly at_eps = substitute(quadratic, Symbol::c(), piece.epsilon);
    at_eps.declare(Symbol::beta());
    bool binds = false;
    if (!at_eps.is_zero()) {
      auto report = sign_on_interval(at_eps, piece.beta_range);
      binds = report.negative_witness.has_value();
    }
    if (z_sq.sign() > 0) {
      // the quadratic's minimum must not lie before epsilon
      MPoly gap = l_dot_z - MPoly(z_sq) * piece.epsilon;
      if (!gap.is_zero() && sign_on_interval(gap, piece.beta_range).negative_witness) binds = true;
    }
    piece.quadratic_binds = binds;
  }
  return out;
}

PseffCertificate pseff_threshold_certificate(const SurfacePair& blown, const DivisorClass& z_prime,
                                             const BetaClass& l_prime, const Interval& beta_window) {
  PseffCertificate out;
  const auto& parent = blown.provenance().parent;
  if (!parent) {
    out.lines.push_back("no recorded parent surface: threshold unknown");
    return out;
  }
  require_same_lattice(blown.lattice(), z_prime.lattice());
  require_same_lattice(blown.lattice(), l_prime.lattice());

  DivisorClass z = push_forward(blown, z_prime);
  BetaClass l(push_forward(blown, l_prime.base), push_forward(blown, l_prime.slope));

  std::vector<MPoly> ratios;
  for (std::size_t i = 0; i < blown.provenance().exceptional_indices.size(); ++i) {
    DivisorClass e = blown.lattice()->basis(blown.provenance().exceptional_indices[i]);
    MPoly delta = intersect(l_prime, e);
    Rational m = intersect(z_prime, e);
    std::string name = blown.lattice()->labels()[static_cast<std::size_t>(blown.provenance().exceptional_indices[i])];
    if (m.sign() <= 0) {
      if (!delta.is_zero()) {
        out.lines.push_back("coefficient of " + name + " is -(" + delta.str() + ") with Z'." + name + " = " + m.str() +
                            ": decomposition is not effective");
        return out;
      }
      continue;
    }
    MPoly ratio = delta / m;
    ratios.push_back(ratio);
    out.lines.push_back("coefficient of " + name + ": " + m.str() + "*c-(" + delta.str() + ") >= 0 for c >= " + ratio.str());
  }
  if (!ratios.empty() && std::all_of(ratios.begin(), ratios.end(), [&](const MPoly& q) { return q == ratios.front(); })) {
    out.valid_from = ratios.front();
  }
  out.threshold = seshadri(*parent, z, l, beta_window);
  out.status = CertificateStatus::Certified;
  out.lines.push_back("L'-cZ' = pi^*(" + l.str() + "-c*(" + z.str() + ")) + effective exceptional part");
  out.lines.push_back("pi^*(L-cZ) is big and nef for c below the parent Seshadri constant");
  return out;
}

}  // namespace flopslope
