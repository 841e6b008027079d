#pragma once

#include "flopslope/exactmath/interval.hpp"
#include "flopslope/exactmath/mpoly.hpp"
#include "flopslope/exactmath/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flopslope {

/// Dense univariate polynomial, coefficients from degree 0 upward.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coefficients);
  /// Throws NotUnivariateError if more than one variable occurs.
  static UPoly from_mpoly(const MPoly& p, Symbol var);

  const std::vector<Rational>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return (*this)(x).sign(); }

  UPoly derivative() const;
  UPoly monic() const;
  MPoly to_mpoly(Symbol var) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);

/// Square-free factors with multiplicity (Yun); constant content dropped.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f);

/// Sturm chain f, f', -rem(...), ...
std::vector<UPoly> sturm_chain(const UPoly& f);
/// Number of distinct real roots of f in the given interval.
std::size_t count_distinct_roots(const UPoly& f, const Interval& window);

/// A real root of a univariate polynomial, known through an isolating
/// interval. Either the interval is a single rational point (the root is
/// exact) or it is closed with lo < hi, contains exactly one root of the
/// defining polynomial, and neither end is a root.
struct AlgebraicRoot {
  /// Square-free factor that vanishes at the root.
  MPoly defining_polynomial;
  Symbol variable = Symbol::beta();
  Interval isolating_interval = Interval::point(0);
  /// Sign of the analysed polynomial just left / right of the root.
  int sign_left = 0;
  int sign_right = 0;
  unsigned multiplicity = 1;

  static AlgebraicRoot rational(const Rational& q, Symbol var = Symbol::beta());

  bool is_exact() const { return isolating_interval.is_point(); }
  std::optional<Rational> exact_value() const;
  /// The analysed polynomial changes sign here.
  bool crosses() const { return sign_left != sign_right; }

  /// Halves the isolating interval (no-op when exact).
  void refine();
  void refine_to(const Rational& width);

  /// Short decimal rendering of the midpoint.
  std::string approx(int significant = 12) const;
  /// Canonical text: the rational when exact, else "root(<poly>, [lo, hi])".
  std::string str() const;
};

/// -1, 0 or +1 according to root vs q. Refines a copy as needed.
int compare(const AlgebraicRoot& root, const Rational& q);
/// Ordering of two roots (equal when they are the same real number).
int compare(const AlgebraicRoot& a, const AlgebraicRoot& b);

/// A rational strictly between a and b (a < b required).
Rational rational_between(const AlgebraicRoot& a, const AlgebraicRoot& b);
Rational rational_between(const Rational& a, const AlgebraicRoot& b);
Rational rational_between(const AlgebraicRoot& a, const Rational& b);

/// Default isolating-interval width, 2^-32.
Rational default_root_width();

/// All distinct real roots of a univariate p in the window, ascending.
/// Intervals of distinct roots are pairwise disjoint, lie inside the window
/// and are at most `max_width` wide; rational roots found along the way are
/// reported exactly.
std::vector<AlgebraicRoot> isolate_real_roots(const MPoly& p, const Interval& window,
                                              const Rational& max_width = default_root_width());

/// Interval whose endpoints may be irrational algebraic numbers.
struct RealInterval {
  AlgebraicRoot lo;
  AlgebraicRoot hi;
  bool lo_open = true;
  bool hi_open = true;

  static RealInterval from(const Interval& i);
  /// The same set as a rational Interval when both ends are rational.
  std::optional<Interval> as_rational() const;
  bool contains(const Rational& x) const;
  /// A rational point of the interior (or the point itself when degenerate).
  Rational sample() const;
  std::string str() const;
};

enum class SignKind { Positive, Negative, Zero, Mixed };

std::string to_string(SignKind kind);

struct SignReport {
  SignKind kind = SignKind::Zero;
  std::optional<Rational> positive_witness;
  std::optional<Rational> negative_witness;
  /// A rational zero of p in the window, when one exists and was found.
  std::optional<Rational> zero_witness;
  /// Roots of p in the window (empty for Zero).
  std::vector<AlgebraicRoot> roots;
};

/// Sign of a univariate p on the whole window. Zero means identically zero.
SignReport sign_on_interval(const MPoly& p, const Interval& window);

}  // namespace flopslope
