#pragma once

#include "flopslope/dnc/futaki.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flopslope {

enum class Verdict { Unstable, NotDestabilized, InvalidConfig };

std::string to_string(Verdict verdict);

/// Open c-interval (lower(b), upper(b)) on one b-range.
struct WindowPiece {
  Interval beta_range;
  MPoly lower;
  MPoly upper;
};

/// Admissible values of c as a function of b. Empty means unknown.
struct CWindow {
  std::vector<WindowPiece> pieces;
  bool unbounded = false;

  bool contains(const Rational& beta, const Rational& c) const;
  /// Piece covering beta, if any.
  const WindowPiece* at(const Rational& beta) const;
  std::string str() const;
};

struct Witness {
  Rational beta;
  Rational c;
  /// Numerator of F at (beta, c).
  Rational value;
};

struct StabilityReport {
  std::string configuration;
  std::string pipeline;
  FutakiPoly futaki;
  std::string c_rule;
  /// F after the c rule, a polynomial in b alone.
  std::optional<MPoly> reduced;
  CWindow window;
  Verdict verdict = Verdict::NotDestabilized;
  std::string reason;
  std::optional<Witness> witness;
  std::vector<AlgebraicRoot> thresholds;
  std::vector<RealInterval> beta_unstable_ranges;
  /// F < 0 on (0, beta0).
  std::optional<Rational> beta0;
  std::optional<MPoly> limit_at_zero;
  /// Upper bound polynomial for F used by the pipeline, if any.
  std::optional<MPoly> bound;
  std::vector<std::string> certificates;
  std::vector<std::string> notes;

  /// Records an Unstable verdict. Throws std::logic_error unless F < 0 at
  /// the witness, the denominator is positive there and c lies in the window.
  void mark_unstable(const Rational& beta, const Rational& c, std::string reason_text);
  void mark_invalid(std::string reason_text);
};

struct BetaRanges {
  /// Components of {F < 0} in the window, split only at sign changes.
  std::vector<RealInterval> ranges;
  /// Roots in the window where F changes sign.
  std::vector<AlgebraicRoot> thresholds;
  /// Every root in the window.
  std::vector<AlgebraicRoot> roots;
  bool identically_zero = false;
};

/// Intersection of two real intervals, if nonempty.
std::optional<RealInterval> meet(const RealInterval& a, const RealInterval& b);

/// Smallest rational interval containing r (closed at irrational ends).
Interval rational_hull(const RealInterval& r);

/// Sign decomposition of a polynomial in b over the window.
BetaRanges unstable_beta_range(const MPoly& f, const RealInterval& window);
BetaRanges unstable_beta_range(const MPoly& f, const Interval& window);

/// Slope test at a fixed b: probes F at c = epsilon(b), then scans (0, epsilon).
/// Throws OutOfRangeError when b is outside the ample region.
StabilityReport slope_verdict(const DNCConfig& config, const Rational& beta);
/// Slope test with b symbolic over the ample region, c = epsilon(b).
StabilityReport slope_verdict(const DNCConfig& config);

}  // namespace flopslope
