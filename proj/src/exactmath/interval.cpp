#include "flopslope/exactmath/interval.hpp"

#include "flopslope/error.hpp"

namespace flopslope {

namespace {

bool describes_empty(const Rational& lo, const Rational& hi, bool lo_open, bool hi_open) {
  return hi < lo || (lo == hi && (lo_open || hi_open));
}

}  // namespace

Interval::Interval(Rational lo, Rational hi, bool lo_open, bool hi_open)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open), hi_open_(hi_open) {
  if (describes_empty(lo_, hi_, lo_open_, hi_open_)) {
    throw EmptyWindowError("empty interval " + std::string(lo_open_ ? "(" : "[") + lo_.str() + ", " +
                           hi_.str() + (hi_open_ ? ")" : "]"));
  }
}

std::optional<Interval> Interval::make(Rational lo, Rational hi, bool lo_open, bool hi_open) {
  if (describes_empty(lo, hi, lo_open, hi_open)) return std::nullopt;
  return Interval(std::move(lo), std::move(hi), lo_open, hi_open);
}

bool Interval::contains(const Rational& x) const {
  bool above = lo_open_ ? lo_ < x : lo_ <= x;
  bool below = hi_open_ ? x < hi_ : x <= hi_;
  return above && below;
}

bool Interval::contains(const Interval& other) const {
  bool lo_ok = other.lo_ > lo_ || (other.lo_ == lo_ && (!lo_open_ || other.lo_open_));
  bool hi_ok = other.hi_ < hi_ || (other.hi_ == hi_ && (!hi_open_ || other.hi_open_));
  return lo_ok && hi_ok;
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
  Rational lo = lo_;
  bool lo_open = lo_open_;
  if (other.lo_ > lo || (other.lo_ == lo && other.lo_open_)) {
    lo = other.lo_;
    lo_open = other.lo_open_ || (other.lo_ == lo_ && lo_open_);
  }
  Rational hi = hi_;
  bool hi_open = hi_open_;
  if (other.hi_ < hi || (other.hi_ == hi && other.hi_open_)) {
    hi = other.hi_;
    hi_open = other.hi_open_ || (other.hi_ == hi_ && hi_open_);
  }
  return make(std::move(lo), std::move(hi), lo_open, hi_open);
}

std::string Interval::str() const {
  return std::string(lo_open_ ? "(" : "[") + lo_.str() + ", " + hi_.str() + (hi_open_ ? ")" : "]");
}

}  // namespace flopslope
