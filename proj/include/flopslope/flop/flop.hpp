#pragma once

#include "flopslope/dnc/report.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace flopslope {

/// The flopped curves C_1..C_r: one per blown-up point O_i, living in the
/// central component over the exceptional curve e_i.
struct FlopSpec {
  /// Classes e_i on the blown-up surface.
  std::vector<DivisorClass> curves;
  /// delta_i = L'.e_i, polynomials in b.
  std::vector<MPoly> deltas;
  std::vector<BlowupPoint> incidence;
  /// Explicit D'.C_i values; unset entries use the projection formula.
  std::vector<std::optional<Rational>> d_prime_dot_ci;

  std::size_t r() const { return curves.size(); }
};

/// Reads curves, deltas and incidences off the last blow-up recorded in
/// the pair. Throws ConstructionError without a recorded blow-up.
FlopSpec flop_spec_from(const SurfacePair& blown, const BetaClass& l_prime);
FlopSpec flop_spec_from(const DNCConfig& config_prime);

struct FlopPairing {
  /// L'_{b,c}.C_i = delta_i - c
  MPoly l_dot;
  /// D'.C_i
  Rational d_dot;
  /// K_X'.C_i, zero for a flop
  Rational k_dot;
  bool d_overridden = false;
};

/// Throws ConstructionError when a point is off Z (by flag or by
/// K_X'.C_i != 0), when the spec is inconsistent with the surface, or when
/// a supplied delta differs from L'.e_i; InvalidConfigError for a bad
/// override.
std::vector<FlopPairing> flop_curve_pairings(const DNCConfig& config_prime, const FlopSpec& spec);

/// H_1.H_2.H_3 together with (H_1.C_i, H_2.C_i, H_3.C_i) for each flopped curve.
struct FlopTriple {
  MPoly base;
  std::vector<std::array<MPoly, 3>> r_values;
};

/// base - sum_i r_1i r_2i r_3i
MPoly flop_triple_product(const FlopTriple& t);

/// Triple product on V^ computed on W = Bl_C V from c^*H_i.c^*H_j.c^*H_k = base,
/// c^*H_i.c^*H_j.E = 0, c^*H_i.E^2 = -r_i and E^3 = 2. The class c^*H_i - m_i E
/// is corrected by m^_i = r_i + m_i to the pullback from V^.
Rational blowup_oracle_triple(const std::array<Rational, 3>& m, const std::array<Rational, 3>& r, const Rational& base);
/// Degree of the flopped class on the new curve, from the same relations.
Rational blowup_oracle_flopped_degree(const Rational& m, const Rational& r);

/// F(X^') = F(X') - 2 sum (L'.C_i)^3 - 3(1-b) sum (L'.C_i)^2 (D'.C_i), in
/// the closed form when the polarization is -K'-(1-b)C', else on the
/// general-engine numerator.
FutakiPoly flop_futaki(const DNCConfig& config_prime, const FlopSpec& spec);
/// Second path: every triple product of the Futaki expansion is replaced
/// by its flopped value.
FutakiPoly flop_futaki_trilinear(const DNCConfig& config_prime, const FlopSpec& spec);

struct FlopWindow {
  /// Pieces of (max(eps', max delta_i), eps) where the bounds do not cross.
  std::vector<WindowPiece> pieces;
  std::vector<std::string> certificates;

  bool empty() const { return pieces.empty(); }
  CWindow as_window() const { return CWindow{pieces, false}; }
};

/// Admissible c for the flopped configuration over the b-window. `z` is
/// the curve on the parent; its transform is the Z' of `pair_prime`.
/// Deltas must be linear in b (InvalidConfigError otherwise).
FlopWindow flop_window(const SurfacePair& pair, const SurfacePair& pair_prime, const DivisorClass& z,
                       const FlopSpec& spec, const Interval& beta_window = Interval::unit_beta());

}  // namespace flopslope
