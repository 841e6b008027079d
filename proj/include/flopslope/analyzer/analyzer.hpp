#pragma once

#include "flopslope/flop/flop.hpp"

#include <optional>

namespace flopslope {

/// epsilon(S, C, -K-C).
Rational boundary_seshadri(const SurfacePair& pair);
/// Midpoint of (0, epsilon(S, C, -K-C)).
Rational default_gamma(const SurfacePair& pair);

/// Destabilization of a pair with -K-C ample by Z = C at c = gamma.
/// Reports InvalidConfig when -K-C is not ample. Throws OutOfRangeError
/// for gamma outside (0, epsilon(S, C, -K-C)) and InvalidConfigError for a
/// boundary of nonzero genus.
StabilityReport maeda_destabilize(const PairPtr& pair, const Rational& gamma);

/// Slope test on a configuration with c given by a polynomial in b. The
/// b-ranges are restricted to where c(b) lies inside (0, epsilon(b)).
StabilityReport slope_rule_verdict(const DNCConfig& config, const MPoly& c_rule);

/// F of the flopped configuration for a blow-up of a pair at r points of
/// a rational boundary, Z = C', delta_i = b, in the parent's data:
///   -2g^2 - 2g^2 (L_b - gC).C + b(6g L'.C' - 4g^2 C'^2 - 4r g^2 + 6r b g - 2r b^2)
MPoly futaki_long_eq(const SurfacePair& parent, int r, const MPoly& gamma);
/// Upper bound for the same quantity when (L_b - gC).C > 0:
///   -2g^2 + b(6g L'.C' - 4g^2 C'^2 - 4r g^2 + 6r b g - 2r b^2)
MPoly restrict_eq_bound(const SurfacePair& parent, int r, const MPoly& gamma);
/// The flopped Futaki invariant in (b, c) computed from the parent's
/// intersection numbers and the incidences of the blown-up points, for
/// either choice of Z.
MPoly flop_parent_form(const SurfacePair& parent, const DivisorClass& parent_z, bool z_is_boundary,
                       const std::vector<BlowupPoint>& points);

/// Blow-up of a pair with -K-C ample at r >= 1 points of C; Z = C',
/// delta_i = b, c = gamma unless `c_rule` (a polynomial in b) is given.
StabilityReport flop_destabilize(const PairPtr& pair_prime, const Rational& gamma,
                                 const std::optional<MPoly>& c_rule = std::nullopt);

/// Flop pipeline on the pair's own Z' with c given by `c_rule`, or by the
/// upper end epsilon(S, Z, L_b) of the flop window when unset.
StabilityReport flop_slope_verdict(const PairPtr& pair_prime, const std::optional<MPoly>& c_rule = std::nullopt,
                                   const std::vector<std::optional<Rational>>& d_prime_override = {});

/// Routes through the two cases of the existence obstruction. Pairs with
/// (K+C)^2 = 0 never get the small-b conclusion; when they carry a
/// blow-up presentation the flop pipeline is still run and its result is
/// reported with that caveat.
StabilityReport theorem_check(const PairPtr& pair_prime, const std::optional<Rational>& gamma = std::nullopt);

}  // namespace flopslope
