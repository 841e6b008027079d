#pragma once

#include "flopslope/exactmath/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flopslope {

/// A polynomial variable. The universe is fixed and totally ordered:
/// b (beta) < c < g (gamma) < d1 < d2 < ...; the order drives the canonical
/// term order of MPoly.
class Symbol {
 public:
  static constexpr Symbol beta() { return Symbol(0); }
  static constexpr Symbol c() { return Symbol(1); }
  static constexpr Symbol gamma() { return Symbol(2); }
  /// delta(1) is "d1"; k >= 1.
  static Symbol delta(unsigned k);
  static constexpr Symbol from_index(unsigned index) { return Symbol(index); }

  /// Accepts "b", "c", "g", "d<k>".
  static Symbol parse(std::string_view name);
  static std::optional<Symbol> try_parse(std::string_view name);

  constexpr unsigned index() const { return index_; }
  std::string name() const;

  friend constexpr auto operator<=>(Symbol, Symbol) = default;

 private:
  constexpr explicit Symbol(unsigned index) : index_(index) {}
  unsigned index_;
};

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in descending graded-lexicographic order (total degree
/// first, then the exponent of b, then c, ...), with no zero coefficients.
/// Besides the terms, a polynomial carries the list of variables it was built
/// over; arithmetic takes the union. Equality compares terms only.
class MPoly {
 public:
  /// Exponent vector indexed by Symbol::index(), trailing zeros trimmed.
  using Exponents = std::vector<std::uint32_t>;

  struct GrlexDescending {
    bool operator()(const Exponents& lhs, const Exponents& rhs) const;
  };
  using TermMap = std::map<Exponents, Rational, GrlexDescending>;

  MPoly() = default;
  MPoly(long long constant);         // NOLINT(google-explicit-constructor)
  MPoly(const Rational& constant);   // NOLINT(google-explicit-constructor)

  static MPoly variable(Symbol s);
  static MPoly monomial(const Rational& coefficient, Exponents exponents);

  /// Parses the canonical grammar and any expression built from rationals,
  /// symbols, + - * ^, parentheses and division by a constant.
  static MPoly parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  const std::vector<Symbol>& variables() const { return variables_; }
  std::vector<Symbol> occurring_variables() const;

  bool is_zero() const { return terms_.empty(); }
  std::optional<Rational> as_constant() const;
  Rational constant_term() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Degree in one variable; -1 for the zero polynomial.
  int degree_in(Symbol s) const;
  /// Coefficient of s^k viewed as a polynomial in the other variables.
  MPoly coefficient(Symbol s, unsigned k) const;

  /// Adds `s` to the declared variable list without changing the terms.
  MPoly& declare(Symbol s);
  /// Drops declared variables that no term uses.
  MPoly& prune_variables();

  MPoly& operator+=(const MPoly& rhs);
  MPoly& operator-=(const MPoly& rhs);
  MPoly& operator*=(const MPoly& rhs);
  friend MPoly operator+(MPoly lhs, const MPoly& rhs) { return lhs += rhs; }
  friend MPoly operator-(MPoly lhs, const MPoly& rhs) { return lhs -= rhs; }
  friend MPoly operator*(MPoly lhs, const MPoly& rhs) { return lhs *= rhs; }
  MPoly operator-() const;
  /// Division by a nonzero constant.
  friend MPoly operator/(MPoly lhs, const Rational& rhs);

  friend bool operator==(const MPoly& lhs, const MPoly& rhs) { return lhs.terms_ == rhs.terms_; }

  /// Canonical serialization, e.g. "-26*b^3+24*b^2"; "0" for zero.
  std::string str() const;

 private:
  void add_term(const Exponents& e, const Rational& coefficient);
  void merge_variables(const std::vector<Symbol>& other);

  TermMap terms_;
  std::vector<Symbol> variables_;
};

std::ostream& operator<<(std::ostream& os, const MPoly& p);

MPoly pow(const MPoly& base, unsigned exponent);

using Assignment = std::map<Symbol, Rational>;

/// Exact value at a full assignment; throws MissingVariableError naming the
/// first declared variable without a value.
Rational evaluate(const MPoly& p, const Assignment& assignment);

/// Composition p(var := q). Throws UnknownVariableError if `var` is not among
/// p's declared variables.
MPoly substitute(const MPoly& p, Symbol var, const MPoly& q);

/// Substitutes every assigned variable that p declares; others stay symbolic.
MPoly partial_evaluate(const MPoly& p, const Assignment& assignment);

/// One-sided limit var -> 0+. Polynomials have no poles, so this is the
/// value at var = 0.
MPoly limit_at_zero_plus(const MPoly& p, Symbol var);

}  // namespace flopslope
