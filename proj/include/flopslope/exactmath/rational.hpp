#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace flopslope {

/// Arbitrary-precision integer used for numerators and denominators.
using Integer = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  explicit Rational(Integer value);
  Rational(Integer numerator, Integer denominator);
  Rational(long long numerator, long long denominator);

  /// Parses "p", "-p", "p/q" or a finite decimal like "0.125".
  static Rational parse(std::string_view text);

  Integer numerator() const;
  Integer denominator() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  Rational abs() const;
  Rational inverse() const;

  /// Largest integer not exceeding the value.
  Integer floor() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  /// Canonical "p/q" form; "/1" is omitted.
  std::string str() const;

  /// Decimal rendering rounded to `significant` significant digits. Only for
  /// human-facing output; the value itself stays exact.
  std::string decimal(int significant = 12) const;

  /// Lossy conversion, used only for display and plotting columns.
  double to_double() const;

  std::size_t hash() const;

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational pow(const Rational& base, unsigned exponent);
Rational midpoint(const Rational& a, const Rational& b);

/// The rational with the smallest denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace flopslope

template <>
struct std::hash<flopslope::Rational> {
  std::size_t operator()(const flopslope::Rational& q) const noexcept { return q.hash(); }
};
