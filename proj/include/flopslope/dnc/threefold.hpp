#pragma once

#include "flopslope/surface/pair.hpp"
#include "flopslope/surface/positivity.hpp"

#include <optional>
#include <string>

namespace flopslope {

/// A divisor class on the deformation to the normal cone
/// X = Bl_{Z x 0}(S x P^1), written p_S^*A + f F + e E with F the fiber
/// class over a point of P^1 and E the exceptional divisor.
struct ThreefoldClass {
  PolyClass surface;
  MPoly fiber;
  MPoly exceptional;

  ThreefoldClass& operator+=(const ThreefoldClass& rhs);
  ThreefoldClass& operator-=(const ThreefoldClass& rhs);
  friend ThreefoldClass operator+(ThreefoldClass a, const ThreefoldClass& b) { return a += b; }
  friend ThreefoldClass operator-(ThreefoldClass a, const ThreefoldClass& b) { return a -= b; }
  friend ThreefoldClass operator*(const MPoly& t, const ThreefoldClass& a);
  ThreefoldClass operator-() const;

  std::string str() const;
};

/// Deformation to the normal cone of Z in S, with polarization L_b.
class DNCConfig {
 public:
  /// Throws InvalidClassError for a zero Z, foreign classes, or a Z
  /// declared to be the boundary whose class differs from C. The flag
  /// defaults to class equality with C.
  DNCConfig(PairPtr pair, DivisorClass z, BetaClass polarization, std::optional<bool> z_is_boundary = std::nullopt);
  /// Polarization -K - (1-b)C.
  static DNCConfig log_fano(PairPtr pair, DivisorClass z, std::optional<bool> z_is_boundary = std::nullopt);

  const PairPtr& pair() const { return pair_; }
  const DivisorClass& z() const { return z_; }
  bool z_is_boundary() const { return z_is_boundary_; }
  const BetaClass& polarization() const { return polarization_; }
  Symbol c_symbol() const { return Symbol::c(); }

  ThreefoldClass pull(const DivisorClass& a) const;
  ThreefoldClass pull(const PolyClass& a) const;
  ThreefoldClass fiber() const;
  ThreefoldClass exceptional() const;
  /// K_X = p_S^*K_S + p^*K_P1 + E with p^*K_P1 = -2F.
  ThreefoldClass canonical() const;
  /// K_X - p^*K_P1.
  ThreefoldClass relative_canonical() const;
  /// Proper transform of C x P^1: p_S^*C - E when Z = C, else p_S^*C.
  ThreefoldClass boundary() const;
  /// p_S^*L - cE for the given L (default: the configured polarization).
  ThreefoldClass test_polarization() const;
  ThreefoldClass test_polarization(const BetaClass& l) const;
  /// Proper transform S_0 = F - E of the central fiber S x 0.
  ThreefoldClass central_component() const;

  /// Triple intersection on X from A.B.F = A.B, A.E.E = -A.Z, E^3 = -Z^2;
  /// every other monomial vanishes.
  MPoly triple(const ThreefoldClass& x, const ThreefoldClass& y, const ThreefoldClass& w) const;
  /// Degree on a curve lying in S_0 (identified with S) of class `curve`:
  /// p_S^*A.G = A.G, F.G = 0, E.G = Z.G.
  MPoly curve_pairing(const ThreefoldClass& x, const DivisorClass& curve) const;

 private:
  PairPtr pair_;
  DivisorClass z_;
  bool z_is_boundary_;
  BetaClass polarization_;
};

struct TripleProductTable {
  MPoly e_cubed;
  MPoly l_e_e;
  MPoly l_l_e;
  MPoly l_cubed;
  /// (K_X - p^*K_P1) paired with L^2, L.E and E^2.
  MPoly k_l_l;
  MPoly k_l_e;
  MPoly k_e_e;
};

TripleProductTable triple_products(const DNCConfig& config);

}  // namespace flopslope
