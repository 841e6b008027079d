#include "flopslope/exactmath/roots.hpp"

#include "flopslope/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace flopslope {

UPoly::UPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_mpoly(const MPoly& p, Symbol var) {
  for (Symbol s : p.occurring_variables()) {
    if (s != var) {
      throw NotUnivariateError("polynomial " + p.str() + " is not univariate in " + var.name());
    }
  }
  std::vector<Rational> c;
  for (const auto& [e, coefficient] : p.terms()) {
    std::size_t k = var.index() < e.size() ? e[var.index()] : 0;
    if (c.size() <= k) c.resize(k + 1, Rational(0));
    c[k] += coefficient;
  }
  return UPoly(std::move(c));
}

Rational UPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long long>(k));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  Rational lead = leading();
  std::vector<Rational> c = c_;
  for (auto& x : c) x /= lead;
  return UPoly(std::move(c));
}

MPoly UPoly::to_mpoly(Symbol var) const {
  MPoly out;
  out.declare(var);
  MPoly x = MPoly::variable(var);
  MPoly power = 1;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k].is_zero()) out += power * MPoly(c_[k]);
    if (k + 1 < c_.size()) power *= x;
  }
  return out;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational factor = r[static_cast<std::size_t>(k)] / lead;
    if (factor.is_zero()) continue;
    q[static_cast<std::size_t>(k - db)] = factor;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<std::size_t>(k - db + j)] -= factor * b.coefficients()[static_cast<std::size_t>(j)];
    }
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, unsigned>> out;
  if (f.degree() < 1) return out;
  UPoly g = f.monic();
  UPoly a = gcd(g, g.derivative());
  UPoly b = divmod(g, a).first;
  UPoly c = divmod(g.derivative(), a).first;
  UPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() >= 1) {
    a = gcd(b, d);
    if (a.degree() >= 1) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

std::vector<UPoly> sturm_chain(const UPoly& f) {
  std::vector<UPoly> chain;
  if (f.is_zero()) return chain;
  chain.push_back(f);
  UPoly d = f.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    UPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(UPoly() - r);
  }
  return chain;
}

namespace {

int sign_changes(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

UPoly squarefree_part(const UPoly& f) {
  UPoly g = gcd(f, f.derivative());
  return divmod(f, g).first;
}

Rational simplest_strictly_between(const Rational& lo, const Rational& hi) {
  Rational s = simplest_between(lo, hi);
  if (s == lo || s == hi) return midpoint(lo, hi);
  return s;
}

}  // namespace

std::size_t count_distinct_roots(const UPoly& f, const Interval& window) {
  if (f.is_zero()) throw ZeroPolynomialError("root count of the zero polynomial");
  if (f.degree() < 1) return 0;
  UPoly g = squarefree_part(f);
  const Rational& a = window.lo();
  const Rational& b = window.hi();
  if (window.is_point()) return g.sign_at(a) == 0 ? 1 : 0;
  auto chain = sturm_chain(g);
  long long n = sign_changes(chain, a) - sign_changes(chain, b);  // roots in (a, b]
  if (!window.lo_open() && g.sign_at(a) == 0) ++n;
  if (window.hi_open() && g.sign_at(b) == 0) --n;
  return static_cast<std::size_t>(n);
}

AlgebraicRoot AlgebraicRoot::rational(const Rational& q, Symbol var) {
  AlgebraicRoot r;
  r.defining_polynomial = MPoly::variable(var) - MPoly(q);
  r.variable = var;
  r.isolating_interval = Interval::point(q);
  r.sign_left = -1;
  r.sign_right = 1;
  return r;
}

std::optional<Rational> AlgebraicRoot::exact_value() const {
  if (is_exact()) return isolating_interval.lo();
  return std::nullopt;
}

void AlgebraicRoot::refine() {
  if (is_exact()) return;
  UPoly f = UPoly::from_mpoly(defining_polynomial, variable);
  const Rational& lo = isolating_interval.lo();
  const Rational& hi = isolating_interval.hi();
  Rational m = midpoint(lo, hi);
  int sm = f.sign_at(m);
  if (sm == 0) {
    isolating_interval = Interval::point(m);
  } else if (sm == f.sign_at(lo)) {
    isolating_interval = Interval::closed(m, hi);
  } else {
    isolating_interval = Interval::closed(lo, m);
  }
}

void AlgebraicRoot::refine_to(const Rational& width) {
  while (!is_exact() && isolating_interval.width() > width) refine();
}

std::string AlgebraicRoot::approx(int significant) const {
  if (is_exact()) return isolating_interval.lo().decimal(significant);
  AlgebraicRoot copy = *this;
  for (int i = 0; i < 400 && !copy.is_exact(); ++i) {
    std::string lo = copy.isolating_interval.lo().decimal(significant);
    std::string hi = copy.isolating_interval.hi().decimal(significant);
    if (lo == hi) return lo;
    copy.refine();
  }
  return copy.isolating_interval.midpoint().decimal(significant);
}

std::string AlgebraicRoot::str() const {
  if (is_exact()) return isolating_interval.lo().str();
  return "root(" + defining_polynomial.str() + ", " + isolating_interval.str() + ")";
}

int compare(const AlgebraicRoot& root, const Rational& q) {
  if (root.is_exact()) {
    const Rational& v = root.isolating_interval.lo();
    return v < q ? -1 : (v == q ? 0 : 1);
  }
  UPoly f = UPoly::from_mpoly(root.defining_polynomial, root.variable);
  AlgebraicRoot r = root;
  while (true) {
    if (r.is_exact()) return compare(r, q);
    if (q <= r.isolating_interval.lo()) return 1;
    if (q >= r.isolating_interval.hi()) return -1;
    if (f.sign_at(q) == 0) return 0;
    r.refine();
  }
}

int compare(const AlgebraicRoot& a, const AlgebraicRoot& b) {
  if (a.is_exact()) return -compare(b, a.isolating_interval.lo());
  if (b.is_exact()) return compare(a, b.isolating_interval.lo());
  UPoly fa = UPoly::from_mpoly(a.defining_polynomial, a.variable);
  UPoly fb = UPoly::from_mpoly(b.defining_polynomial, b.variable);
  UPoly g = gcd(fa, fb);
  if (auto common = a.isolating_interval.intersect(b.isolating_interval);
      common && g.degree() >= 1 && count_distinct_roots(g, *common) > 0) {
    return 0;
  }
  AlgebraicRoot x = a;
  AlgebraicRoot y = b;
  while (true) {
    if (x.is_exact()) return -compare(y, x.isolating_interval.lo());
    if (y.is_exact()) return compare(x, y.isolating_interval.lo());
    if (x.isolating_interval.hi() <= y.isolating_interval.lo()) return -1;
    if (y.isolating_interval.hi() <= x.isolating_interval.lo()) return 1;
    x.refine();
    y.refine();
  }
}

Rational rational_between(const Rational& a, const AlgebraicRoot& b) {
  AlgebraicRoot r = b;
  while (true) {
    if (r.is_exact()) return simplest_strictly_between(a, r.isolating_interval.lo());
    if (a < r.isolating_interval.lo()) return simplest_strictly_between(a, r.isolating_interval.lo());
    r.refine();
  }
}

Rational rational_between(const AlgebraicRoot& a, const Rational& b) {
  AlgebraicRoot r = a;
  while (true) {
    if (r.is_exact()) return simplest_strictly_between(r.isolating_interval.lo(), b);
    if (r.isolating_interval.hi() < b) return simplest_strictly_between(r.isolating_interval.hi(), b);
    r.refine();
  }
}

Rational rational_between(const AlgebraicRoot& a, const AlgebraicRoot& b) {
  if (a.is_exact()) return rational_between(a.isolating_interval.lo(), b);
  if (b.is_exact()) return rational_between(a, b.isolating_interval.lo());
  AlgebraicRoot x = a;
  AlgebraicRoot y = b;
  while (true) {
    if (x.is_exact()) return rational_between(x.isolating_interval.lo(), y);
    if (y.is_exact()) return rational_between(x, y.isolating_interval.lo());
    if (x.isolating_interval.hi() < y.isolating_interval.lo()) {
      return simplest_strictly_between(x.isolating_interval.hi(), y.isolating_interval.lo());
    }
    if (x.isolating_interval.hi() == y.isolating_interval.lo()) return x.isolating_interval.hi();
    x.refine();
    y.refine();
  }
}

Rational default_root_width() { return Rational(Integer(1), Integer(1) << 32); }

namespace {

// Roots of one square-free factor f of p inside the window.
struct FactorRoots {
  std::vector<Rational> exact;
  std::vector<std::pair<Rational, Rational>> isolated;
};

FactorRoots isolate_factor(const UPoly& f, const UPoly& p, const Interval& window, const Rational& max_width) {
  FactorRoots out;
  const Rational& a = window.lo();
  const Rational& b = window.hi();
  if (window.is_point()) {
    if (f.sign_at(a) == 0) out.exact.push_back(a);
    return out;
  }
  if (f.degree() == 1) {
    Rational r = -f.coefficients()[0] / f.coefficients()[1];
    if (window.contains(r)) out.exact.push_back(r);
    return out;
  }
  if (!window.lo_open() && f.sign_at(a) == 0) out.exact.push_back(a);
  if (!window.hi_open() && f.sign_at(b) == 0) out.exact.push_back(b);

  auto chain = sturm_chain(f);
  auto V = [&](const Rational& x) { return sign_changes(chain, x); };
  auto open_count = [&](const Rational& lo, const Rational& hi) {
    return V(lo) - V(hi) - (f.sign_at(hi) == 0 ? 1 : 0);
  };

  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> stack{{a, b, open_count(a, b)}};
  std::vector<std::pair<Rational, Rational>> singles;
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.count <= 0) continue;
    if (cur.count == 1) {
      singles.emplace_back(cur.lo, cur.hi);
      continue;
    }
    Rational m = midpoint(cur.lo, cur.hi);
    if (f.sign_at(m) == 0) out.exact.push_back(m);
    stack.push_back({m, cur.hi, open_count(m, cur.hi)});
    stack.push_back({cur.lo, m, open_count(cur.lo, m)});
  }

  for (auto [lo, hi] : singles) {
    bool exact_found = false;
    while (f.sign_at(lo) == 0 || f.sign_at(hi) == 0 || p.sign_at(lo) == 0 || p.sign_at(hi) == 0 || lo == a ||
           hi == b || hi - lo > max_width) {
      Rational m = midpoint(lo, hi);
      if (f.sign_at(m) == 0) {
        out.exact.push_back(m);
        exact_found = true;
        break;
      }
      if (open_count(lo, m) == 1) {
        hi = m;
      } else {
        lo = m;
      }
    }
    if (exact_found) continue;
    Rational s = simplest_between(lo, hi);
    if (f.sign_at(s) == 0) {
      out.exact.push_back(s);
    } else {
      out.isolated.emplace_back(lo, hi);
    }
  }
  return out;
}

bool overlaps(const AlgebraicRoot& x, const AlgebraicRoot& y) {
  const Rational& xh = x.isolating_interval.hi();
  const Rational& yl = y.isolating_interval.lo();
  if (x.is_exact() || y.is_exact()) return xh >= yl;
  return xh > yl;
}

void set_signs_at_exact(AlgebraicRoot& r, const UPoly& p) {
  const Rational& x = r.isolating_interval.lo();
  UPoly d = p;
  unsigned k = 0;
  while (!d.is_zero() && d.sign_at(x) == 0) {
    d = d.derivative();
    ++k;
  }
  int s = d.sign_at(x);
  r.sign_right = s;
  r.sign_left = (k % 2 == 0) ? s : -s;
}

}  // namespace

std::vector<AlgebraicRoot> isolate_real_roots(const MPoly& p, const Interval& window, const Rational& max_width) {
  if (p.is_zero()) throw ZeroPolynomialError("root isolation of the zero polynomial");
  auto vars = p.occurring_variables();
  if (vars.size() > 1) throw NotUnivariateError("polynomial " + p.str() + " is not univariate");
  std::vector<AlgebraicRoot> roots;
  if (vars.empty()) return roots;
  Symbol var = vars.front();
  UPoly u = UPoly::from_mpoly(p, var);

  for (const auto& [factor, multiplicity] : squarefree_decomposition(u)) {
    FactorRoots fr = isolate_factor(factor, u, window, max_width);
    for (const auto& x : fr.exact) {
      AlgebraicRoot r;
      r.defining_polynomial = MPoly::variable(var) - MPoly(x);
      r.variable = var;
      r.isolating_interval = Interval::point(x);
      r.multiplicity = multiplicity;
      roots.push_back(std::move(r));
    }
    for (const auto& [lo, hi] : fr.isolated) {
      AlgebraicRoot r;
      r.defining_polynomial = factor.to_mpoly(var);
      r.variable = var;
      r.isolating_interval = Interval::closed(lo, hi);
      r.multiplicity = multiplicity;
      roots.push_back(std::move(r));
    }
  }

  auto by_lo = [](const AlgebraicRoot& x, const AlgebraicRoot& y) {
    return x.isolating_interval.lo() < y.isolating_interval.lo();
  };
  std::sort(roots.begin(), roots.end(), by_lo);
  // Separate intervals belonging to different factors.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (!overlaps(roots[i], roots[i + 1])) continue;
      AlgebraicRoot& wider = (roots[i].is_exact() ||
                              (!roots[i + 1].is_exact() &&
                               roots[i + 1].isolating_interval.width() > roots[i].isolating_interval.width()))
                                 ? roots[i + 1]
                                 : roots[i];
      wider.refine();
      changed = true;
    }
    if (changed) std::sort(roots.begin(), roots.end(), by_lo);
  }
  // Interval endpoints must not be roots of p after separation.
  for (auto& r : roots) {
    while (!r.is_exact() &&
           (u.sign_at(r.isolating_interval.lo()) == 0 || u.sign_at(r.isolating_interval.hi()) == 0)) {
      r.refine();
    }
  }
  std::sort(roots.begin(), roots.end(), by_lo);

  for (auto& r : roots) {
    if (r.is_exact()) {
      set_signs_at_exact(r, u);
    } else {
      r.sign_left = u.sign_at(r.isolating_interval.lo());
      r.sign_right = u.sign_at(r.isolating_interval.hi());
    }
  }
  return roots;
}

RealInterval RealInterval::from(const Interval& i) {
  return {AlgebraicRoot::rational(i.lo()), AlgebraicRoot::rational(i.hi()), i.lo_open(), i.hi_open()};
}

std::optional<Interval> RealInterval::as_rational() const {
  if (!lo.is_exact() || !hi.is_exact()) return std::nullopt;
  return Interval::make(*lo.exact_value(), *hi.exact_value(), lo_open, hi_open);
}

bool RealInterval::contains(const Rational& x) const {
  int l = compare(lo, x);
  int h = compare(hi, x);
  bool above = lo_open ? l < 0 : l <= 0;
  bool below = hi_open ? h > 0 : h >= 0;
  return above && below;
}

Rational RealInterval::sample() const {
  if (lo.is_exact() && hi.is_exact() && *lo.exact_value() == *hi.exact_value()) return *lo.exact_value();
  return rational_between(lo, hi);
}

std::string RealInterval::str() const {
  return std::string(lo_open ? "(" : "[") + lo.str() + ", " + hi.str() + (hi_open ? ")" : "]");
}

std::string to_string(SignKind kind) {
  switch (kind) {
    case SignKind::Positive:
      return "positive";
    case SignKind::Negative:
      return "negative";
    case SignKind::Zero:
      return "zero";
    case SignKind::Mixed:
      return "mixed";
  }
  return "mixed";
}

SignReport sign_on_interval(const MPoly& p, const Interval& window) {
  SignReport report;
  if (p.is_zero()) {
    report.kind = SignKind::Zero;
    report.zero_witness = window.is_point() ? window.lo() : window.midpoint();
    return report;
  }
  auto vars = p.occurring_variables();
  if (vars.size() > 1) throw NotUnivariateError("polynomial " + p.str() + " is not univariate");
  if (vars.empty()) {
    report.kind = p.constant_term().sign() > 0 ? SignKind::Positive : SignKind::Negative;
    Rational sample = window.is_point() ? window.lo() : window.midpoint();
    (report.kind == SignKind::Positive ? report.positive_witness : report.negative_witness) = sample;
    return report;
  }
  UPoly u = UPoly::from_mpoly(p, vars.front());

  auto record = [&](const Rational& x) {
    int s = u.sign_at(x);
    if (s > 0 && !report.positive_witness) report.positive_witness = x;
    if (s < 0 && !report.negative_witness) report.negative_witness = x;
    if (s == 0 && !report.zero_witness) report.zero_witness = x;
  };

  if (window.is_point()) {
    record(window.lo());
    int s = u.sign_at(window.lo());
    report.kind = s > 0 ? SignKind::Positive : (s < 0 ? SignKind::Negative : SignKind::Zero);
    return report;
  }

  report.roots = isolate_real_roots(p, window);
  if (report.roots.empty()) {
    record(window.midpoint());
  } else {
    Rational prev = window.lo();
    bool prev_is_window = true;
    for (const auto& r : report.roots) {
      const Rational& lo = r.isolating_interval.lo();
      if (prev < lo) {
        record(simplest_strictly_between(prev, lo));
      } else if (!prev_is_window && prev == lo) {
        record(lo);
      }
      if (r.is_exact()) record(lo);
      prev = r.isolating_interval.hi();
      prev_is_window = false;
    }
    if (prev < window.hi()) record(simplest_strictly_between(prev, window.hi()));
  }

  if (report.positive_witness && report.negative_witness) {
    report.kind = SignKind::Mixed;
  } else if (!report.roots.empty()) {
    report.kind = SignKind::Mixed;
  } else {
    report.kind = report.positive_witness ? SignKind::Positive : SignKind::Negative;
  }
  return report;
}

}  // namespace flopslope
