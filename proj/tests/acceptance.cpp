// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

#include "generators.hpp"
#include "runner.hpp"
#include "surface_fixtures.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>

using namespace flopslope;
namespace fx = flopslope::fixtures;

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

MPoly at_c(MPoly f, const MPoly& c) {
  f.declare(Symbol::c());
  return substitute(f, Symbol::c(), c);
}

DNCConfig log_config(const BlowupResult& b) { return DNCConfig::log_fano(b.pair, *b.z_transform); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

Outcome criterion1() {
  Outcome o;
  PairPtr f1 = fx::f1_section();
  MPoly eps = P("1+b");
  MPoly fc = at_c(slope_futaki(DNCConfig::log_fano(f1, f1->boundary())).value, eps);
  o.require(same(fc, P("2*(1+b)*(b^2+2*b-2)")), "Z=C: got " + fc.str());

  BetaRanges br = unstable_beta_range(MPoly(fc).prune_variables().declare(Symbol::beta()), Interval::unit_beta());
  bool range_ok = br.ranges.size() == 1 && br.ranges[0].lo.is_exact() && br.ranges[0].lo.exact_value()->is_zero() &&
                  br.ranges[0].lo_open && !br.ranges[0].hi.is_exact();
  o.require(range_ok, "range is not (0, root)");
  if (range_ok) {
    const Interval& iso = br.ranges[0].hi.isolating_interval;
    Rational x(7320508, 10000000), tol(1, 1000000);
    o.require(x - tol <= iso.lo() && iso.hi() <= x + tol, "isolating interval " + iso.str());
  }

  MPoly fe = at_c(slope_futaki(DNCConfig::log_fano(f1, f1->lattice()->make_class({1, 0}))).value, eps);
  o.require(same(fe, P("(1+b)*(2-b^2-2*b)")), "Z=E: got " + fe.str() + " = 2(1+b)(2-2b-b^2)");
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int r = 1; r <= 5; ++r) {
    DNCConfig cfg = log_config(fx::conic_points(r));
    std::string rs = std::to_string(r);
    MPoly slope = slope_futaki(cfg).value;
    o.require(same(slope, P("(6*b*c-3*c^2)*(2+b*(4-" + rs + "))+(2*c^3-3*c^2*b)*(4-" + rs + ")")), "slope r=" + rs);
    MPoly flopped = flop_futaki(cfg, flop_spec_from(cfg)).value;
    o.require(same(flopped - slope, P(std::to_string(2 * r) + "*(c-b)^3")), "flop correction r=" + rs);
    MPoly lim = limit_at_zero_plus(at_c(flopped, P("1/2+b")), Symbol::beta());
    o.require(lim.as_constant() && *lim.as_constant() == Rational(-1, 2), "limit r=" + rs + ": " + lim.str());
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  BlowupResult b = fx::p2_one_point();
  DNCConfig cfg = log_config(b);
  FlopSpec spec = flop_spec_from(cfg);
  o.require(same(slope_futaki(cfg).value, P("6*c*b*(2-c)")), "slope");
  MPoly flopped = flop_futaki(cfg, spec).value;
  o.require(same(flopped, P("6*c*b*(2-c)-2*(b-c)^3-3*(1-b)*(b-c)^2")), "flop: " + flopped.str());
  MPoly reduced = at_c(flopped, P("3*b"));
  o.require(same(reduced, P("24*b^2-26*b^3")), "c=3b: " + reduced.str());

  StabilityReport rep = flop_slope_verdict(b.pair, P("3*b").prune_variables().declare(Symbol::beta()));
  bool th = rep.thresholds.size() == 1 && rep.thresholds[0].exact_value() == Rational(12, 13);
  o.require(th, "threshold");

  FlopWindow w = flop_window(*b.pair->provenance().parent, *b.pair, *b.pair->provenance().parent_z, spec);
  o.require(w.pieces.size() == 1 && w.pieces[0].beta_range == Interval::unit_beta() && same(w.pieces[0].lower, P("b")) &&
                same(w.pieces[0].upper, P("3*b")),
            "window " + w.as_window().str());
  return o;
}

Outcome criterion4() {
  Outcome o;
  BlowupResult b = fx::p2_two_points();
  DNCConfig cfg = log_config(b);
  MPoly slope = slope_futaki(cfg).value;
  o.require(same(slope, P("3*b*c*(2-c)-c^2*(2*c-3)")), "slope: " + slope.str());
  for (const Rational& beta : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
    MPoly fc = partial_evaluate(slope, {{Symbol::beta(), beta}});
    o.require(sign_on_interval(fc, Interval::open(0, beta)).kind == SignKind::Positive, "sign at b=" + beta.str());
  }
  MPoly reduced = at_c(flop_futaki(cfg, flop_spec_from(cfg)).value, P("3*b"));
  o.require(same(reduced, P("b^2*(21-25*b)")), "c=3b: " + reduced.str());
  BetaRanges br = unstable_beta_range(MPoly(reduced).prune_variables().declare(Symbol::beta()), Interval::unit_beta());
  o.require(br.thresholds.size() == 1 && br.thresholds[0].exact_value() == Rational(21, 25), "threshold");
  return o;
}

Outcome criterion5() {
  Outcome o;
  testgen::Gen g(5);
  for (int k = 0; k < 100; ++k) {
    Rational base = g.rational();
    std::array<Rational, 3> m{g.rational(), g.rational(), g.rational()};
    std::array<Rational, 3> r{g.rational(), g.rational(), g.rational()};
    MPoly lemma = flop_triple_product({MPoly(base), {{MPoly(r[0]), MPoly(r[1]), MPoly(r[2])}}});
    if (!(lemma == MPoly(blowup_oracle_triple(m, r, base)))) {
      o.require(false, "sample " + std::to_string(k));
      break;
    }
    std::array<MPoly, 3> back;
    for (int i = 0; i < 3; ++i) back[i] = MPoly(blowup_oracle_flopped_degree(m[i], r[i]));
    if (!(flop_triple_product({lemma, {back}}) == MPoly(base))) {
      o.require(false, "involution at sample " + std::to_string(k));
      break;
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  cli::Catalog cat(FLOPSLOPE_ACCEPTANCE_CATALOG);
  int configs = 0;
  for (const auto& name : cat.names()) {
    cli::json doc = cat.load(name);
    doc["pipeline"] = "slope";
    cli::BuiltJob b = cli::build(cli::parse_job(doc, &cat));
    DNCConfig cfg = DNCConfig::log_fano(b.pair, b.z);
    FutakiPoly closed = slope_futaki(cfg);
    FutakiPoly general = general_futaki(cfg);
    o.require(same(closed.value * general.denominator, general.value), name + ": paths differ");
    // on the ample region when there is one, else on the whole range (0, 1]
    AmpRegion amp = amp_region(*b.pair);
    Interval window = amp.region ? Interval::open(amp.region->lo.isolating_interval.lo(),
                                                  amp.region->hi.isolating_interval.hi())
                                 : Interval::unit_beta();
    MPoly l2 = MPoly(general.denominator).prune_variables().declare(Symbol::beta());
    SignKind s = l2.as_constant() ? (l2.as_constant()->sign() > 0 ? SignKind::Positive : SignKind::Mixed)
                                  : sign_on_interval(l2, window).kind;
    o.require(s == SignKind::Positive, name + ": L^2 not certified positive");
    ++configs;
  }
  o.require(configs >= 6, "only " + std::to_string(configs) + " configurations");
  o.detail = o.pass ? std::to_string(configs) + " configurations" : o.detail;
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const PairPtr& p : {fx::plane(2), fx::f1_section()}) {
    Rational gamma = boundary_seshadri(*p) / 2;
    StabilityReport r = maeda_destabilize(p, gamma);
    const std::string& n = p->name();
    bool lim = r.limit_at_zero && r.limit_at_zero->as_constant() && *r.limit_at_zero->as_constant() <= -2 * gamma * gamma;
    o.require(lim, n + ": limit");
    o.require(r.beta0 && r.beta0->sign() > 0, n + ": no beta0");
    if (r.beta0 && r.reduced) {
      o.require(sign_on_interval(*r.reduced, Interval::open(0, *r.beta0)).kind == SignKind::Negative,
                n + ": F not negative on (0, beta0)");
    }
  }
  return o;
}

bool witness_ok(const StabilityReport& r) {
  if (r.verdict != Verdict::Unstable || !r.witness) return false;
  Rational f = evaluate(r.futaki.value, {{Symbol::beta(), r.witness->beta}, {Symbol::c(), r.witness->c}});
  Rational den = evaluate(r.futaki.denominator, {{Symbol::beta(), r.witness->beta}, {Symbol::c(), r.witness->c}});
  return f.sign() < 0 && den.sign() > 0 && r.window.contains(r.witness->beta, r.witness->c);
}

Outcome criterion8() {
  Outcome o;
  o.require(theorem_check(fx::plane(3)).verdict == Verdict::NotDestabilized, "(P2, cubic)");
  for (auto [name, b] : {std::pair{"p2-one-point", fx::p2_one_point()}, std::pair{"p2-two-points", fx::p2_two_points()}}) {
    o.require(witness_ok(theorem_check(b.pair)), std::string(name) + ": no verified witness");
    DNCConfig cfg = log_config(b);
    MPoly f = flop_futaki(cfg, flop_spec_from(cfg)).value;
    const Provenance& prov = b.pair->provenance();
    o.require(same(flop_parent_form(*prov.parent, *prov.parent_z, false, prov.points), f),
              std::string(name) + ": closed form");
  }
  // the Z = C display itself, with gamma := c, on Maeda parents
  for (int r = 1; r <= 5; ++r) {
    BlowupResult b = fx::conic_points(r);
    DNCConfig cfg = log_config(b);
    MPoly f = flop_futaki(cfg, flop_spec_from(cfg)).value;
    o.require(same(futaki_long_eq(*b.pair->provenance().parent, r, MPoly::variable(Symbol::c())), f),
              "long form r=" + std::to_string(r));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  PairPtr f1 = fx::f1_section();
  auto e1 = seshadri(*f1, f1->boundary(), f1->log_polarization()).linear();
  o.require(e1 && same(*e1, P("1+b")), "epsilon(F1, C)");
  for (int r = 1; r <= 5; ++r) {
    BlowupResult b = fx::conic_points(r);
    auto e = seshadri(*b.pair, *b.z_transform, b.pair->log_polarization()).linear();
    o.require(e && same(*e, P("b")), "epsilon(S', Z') r=" + std::to_string(r));
    PseffCertificate t = pseff_threshold_certificate(*b.pair, *b.z_transform, b.pair->log_polarization());
    auto tl = t.threshold ? t.threshold->linear() : std::nullopt;
    o.require(t.status == CertificateStatus::Certified && tl && same(*tl, P("1/2+b")), "tau r=" + std::to_string(r));
  }
  BlowupResult s = fx::p2_one_point();
  PseffCertificate t = pseff_threshold_certificate(*s.pair, *s.z_transform, s.pair->log_polarization());
  auto tl = t.threshold ? t.threshold->linear() : std::nullopt;
  o.require(t.status == CertificateStatus::Certified && tl && same(*tl, P("3*b")), "tau p2-one-point");
  return o;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome criterion10() {
  Outcome o;
  std::string cmd = std::string("\"") + FLOPSLOPE_ACCEPTANCE_CLI + "\" verify-examples --jobs \"" +
                    FLOPSLOPE_ACCEPTANCE_JOBS + "\" 2>&1";
  int s1 = 0, s2 = 0;
  std::string first = capture(cmd, s1);
  std::string second = capture(cmd, s2);
  o.require(s1 != -1 && s2 != -1, "could not start the CLI");
  o.require(first.find("checks passed") != std::string::npos, "no table produced");
  o.require(first == second, "outputs differ");
  if (o.pass) o.detail = std::to_string(first.size()) + " identical bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"F1 slope Futaki, threshold sqrt(3)-1, Z=E value", criterion1},
      {"conic blow-ups: slope, flop correction 2r(c-b)^3, limit -1/2", criterion2},
      {"F1 anticanonical flop: 24b^2-26b^3, threshold 12/13, window (b, 3b)", criterion3},
      {"two-point blow-up: positivity, b^2(21-25b), threshold 21/25", criterion4},
      {"flopped triple product vs blow-up oracle, involution", criterion5},
      {"closed form equals general engine on catalog configurations", criterion6},
      {"Maeda pipeline: limit <= -2 gamma^2, explicit beta0", criterion7},
      {"theorem check: cubic not destabilized, flops unstable, closed forms", criterion8},
      {"Seshadri constants and bigness thresholds", criterion9},
      {"verify-examples byte-identical across two runs", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!o.detail.empty()) std::cout << "  [" << o.detail << "]";
    std::cout << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
