#pragma once

#include "flopslope/exactmath/rational.hpp"

#include <optional>
#include <string>

namespace flopslope {

/// Nonempty real interval with rational endpoints; each end open or closed.
/// A degenerate interval (lo == hi) is always closed.
class Interval {
 public:
  /// Throws EmptyWindowError if the described set is empty.
  Interval(Rational lo, Rational hi, bool lo_open, bool hi_open);

  /// Returns nullopt instead of throwing for an empty set.
  static std::optional<Interval> make(Rational lo, Rational hi, bool lo_open, bool hi_open);

  static Interval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
  static Interval open_closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, false}; }
  static Interval closed_open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, true}; }
  static Interval point(const Rational& q) { return {q, q, false, false}; }
  /// The cone-angle range (0, 1].
  static Interval unit_beta() { return open_closed(0, 1); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool lo_open() const { return lo_open_; }
  bool hi_open() const { return hi_open_; }

  bool is_point() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return flopslope::midpoint(lo_, hi_); }

  bool contains(const Rational& x) const;
  /// True when every point of `other` lies in this interval.
  bool contains(const Interval& other) const;

  std::optional<Interval> intersect(const Interval& other) const;

  /// "(0, 1]" style rendering with canonical rationals.
  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_;
  Rational hi_;
  bool lo_open_;
  bool hi_open_;
};

}  // namespace flopslope
