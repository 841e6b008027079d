#include "flopslope/exactmath/mpoly.hpp"

#include "flopslope/error.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace flopslope {

// ---------------------------------------------------------------- Symbol

Symbol Symbol::delta(unsigned k) {
  if (k == 0) throw std::invalid_argument("delta symbols are numbered from 1");
  return Symbol(2 + k);
}

std::optional<Symbol> Symbol::try_parse(std::string_view name) {
  if (name == "b") return beta();
  if (name == "c") return c();
  if (name == "g") return gamma();
  if (name.size() >= 2 && name.front() == 'd') {
    unsigned k = 0;
    for (char ch : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
      k = k * 10 + static_cast<unsigned>(ch - '0');
      if (k > 100000) return std::nullopt;
    }
    if (k == 0 || name[1] == '0') return std::nullopt;
    return delta(k);
  }
  return std::nullopt;
}

Symbol Symbol::parse(std::string_view name) {
  if (auto s = try_parse(name)) return *s;
  throw UnknownVariableError("unknown symbol '" + std::string(name) + "' (expected b, c, g or d<k>)");
}

std::string Symbol::name() const {
  switch (index_) {
    case 0: return "b";
    case 1: return "c";
    case 2: return "g";
    default: return "d" + std::to_string(index_ - 2);
  }
}

// ---------------------------------------------------------------- ordering

namespace {

std::uint64_t total_degree(const MPoly::Exponents& e) {
  std::uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

std::uint32_t exponent_at(const MPoly::Exponents& e, std::size_t i) { return i < e.size() ? e[i] : 0; }

void trim(MPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

}  // namespace

bool MPoly::GrlexDescending::operator()(const Exponents& lhs, const Exponents& rhs) const {
  auto dl = total_degree(lhs);
  auto dr = total_degree(rhs);
  if (dl != dr) return dl > dr;
  std::size_t n = std::max(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto a = exponent_at(lhs, i);
    auto b = exponent_at(rhs, i);
    if (a != b) return a > b;
  }
  return false;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(long long constant) : MPoly(Rational(constant)) {}

MPoly::MPoly(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Exponents{}, constant);
}

MPoly MPoly::variable(Symbol s) {
  Exponents e(s.index() + 1, 0);
  e[s.index()] = 1;
  MPoly p = monomial(1, std::move(e));
  return p;
}

MPoly MPoly::monomial(const Rational& coefficient, Exponents exponents) {
  trim(exponents);
  MPoly p;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] != 0) p.declare(Symbol::from_index(static_cast<unsigned>(i)));
  }
  if (!coefficient.is_zero()) p.terms_.emplace(std::move(exponents), coefficient);
  return p;
}

std::vector<Symbol> MPoly::occurring_variables() const {
  std::size_t width = 0;
  for (const auto& [e, q] : terms_) width = std::max(width, e.size());
  std::vector<bool> seen(width, false);
  for (const auto& [e, q] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) seen[i] = seen[i] || e[i] != 0;
  }
  std::vector<Symbol> out;
  for (const Symbol& s : variables_) {
    if (s.index() < width && seen[s.index()]) out.push_back(s);
  }
  return out;
}

std::optional<Rational> MPoly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

Rational MPoly::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

int MPoly::degree_in(Symbol s) const {
  if (terms_.empty()) return -1;
  std::uint32_t d = 0;
  for (const auto& [e, q] : terms_) d = std::max(d, exponent_at(e, s.index()));
  return static_cast<int>(d);
}

MPoly MPoly::coefficient(Symbol s, unsigned k) const {
  MPoly out;
  out.variables_ = variables_;
  out.variables_.erase(std::remove(out.variables_.begin(), out.variables_.end(), s), out.variables_.end());
  for (const auto& [e, q] : terms_) {
    if (exponent_at(e, s.index()) != k) continue;
    Exponents rest = e;
    if (s.index() < rest.size()) rest[s.index()] = 0;
    trim(rest);
    out.add_term(rest, q);
  }
  return out;
}

MPoly& MPoly::prune_variables() {
  variables_ = occurring_variables();
  return *this;
}

MPoly& MPoly::declare(Symbol s) {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), s);
  if (it == variables_.end() || *it != s) variables_.insert(it, s);
  return *this;
}

void MPoly::merge_variables(const std::vector<Symbol>& other) {
  for (Symbol s : other) declare(s);
}

void MPoly::add_term(const Exponents& e, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& rhs) {
  for (const auto& [e, q] : rhs.terms_) add_term(e, q);
  merge_variables(rhs.variables_);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& rhs) {
  for (const auto& [e, q] : rhs.terms_) add_term(e, -q);
  merge_variables(rhs.variables_);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& rhs) {
  MPoly product;
  for (const auto& [ea, qa] : terms_) {
    for (const auto& [eb, qb] : rhs.terms_) {
      Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponent_at(ea, i) + exponent_at(eb, i);
      product.add_term(e, qa * qb);
    }
  }
  terms_ = std::move(product.terms_);
  merge_variables(rhs.variables_);
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [e, q] : out.terms_) q = -q;
  return out;
}

MPoly operator/(MPoly lhs, const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("polynomial division by zero");
  for (auto& [e, q] : lhs.terms_) q /= rhs;
  return lhs;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, q] : terms_) {
    std::string monomial;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += Symbol::from_index(static_cast<unsigned>(i)).name();
      if (e[i] != 1) monomial += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (monomial.empty()) {
      term = q.str();
    } else if (q == Rational(1)) {
      term = monomial;
    } else if (q == Rational(-1)) {
      term = "-" + monomial;
    } else {
      term = q.str() + "*" + monomial;
    }
    if (!first && term.front() != '-') out += '+';
    out += term;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

MPoly pow(const MPoly& base, unsigned exponent) {
  MPoly result(1);
  for (Symbol s : base.variables()) result.declare(s);
  MPoly b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

// ---------------------------------------------------------------- evaluation

Rational evaluate(const MPoly& p, const Assignment& assignment) {
  for (Symbol s : p.variables()) {
    if (!assignment.contains(s)) {
      throw MissingVariableError("no value assigned to variable '" + s.name() + "'");
    }
  }
  Rational total = 0;
  for (const auto& [e, q] : p.terms()) {
    Rational term = q;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      term *= pow(assignment.at(Symbol::from_index(static_cast<unsigned>(i))), e[i]);
    }
    total += term;
  }
  return total;
}

MPoly substitute(const MPoly& p, Symbol var, const MPoly& q) {
  const auto& vars = p.variables();
  if (!std::binary_search(vars.begin(), vars.end(), var)) {
    throw UnknownVariableError("variable '" + var.name() + "' does not occur in " + p.str());
  }
  MPoly out;
  for (Symbol s : vars) {
    if (s != var) out.declare(s);
  }
  for (Symbol s : q.variables()) out.declare(s);

  std::vector<MPoly> powers{MPoly(1)};
  for (const auto& [e, coefficient] : p.terms()) {
    std::uint32_t k = exponent_at(e, var.index());
    while (powers.size() <= k) powers.push_back(powers.back() * q);
    MPoly::Exponents rest = e;
    if (var.index() < rest.size()) rest[var.index()] = 0;
    out += MPoly::monomial(coefficient, rest) * powers[k];
  }
  return out;
}

MPoly partial_evaluate(const MPoly& p, const Assignment& assignment) {
  MPoly out = p;
  for (const auto& [s, value] : assignment) {
    if (std::binary_search(out.variables().begin(), out.variables().end(), s)) {
      out = substitute(out, s, MPoly(value));
    }
  }
  return out;
}

MPoly limit_at_zero_plus(const MPoly& p, Symbol var) {
  if (!std::binary_search(p.variables().begin(), p.variables().end(), var)) return p;
  return substitute(p, var, MPoly(0));
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MPoly parse_all() {
    MPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  MPoly term() {
    MPoly p = unary();
    for (;;) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        MPoly d = unary();
        auto k = d.as_constant();
        if (!k || k->is_zero()) fail("division only by a nonzero constant");
        p = p / *k;
      } else {
        return p;
      }
    }
  }

  MPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MPoly power() {
    MPoly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 4096) fail("exponent too large");
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  MPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      MPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      return MPoly(Rational::parse(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto name = text_.substr(start, pos_ - start);
      auto s = Symbol::try_parse(name);
      if (!s) fail("unknown symbol '" + std::string(name) + "'");
      return MPoly::variable(*s);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace flopslope
