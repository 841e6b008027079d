#pragma once

#include "flopslope/dnc/threefold.hpp"

#include <string>

namespace flopslope {

enum class FutakiBranch { ZIsBoundary, ZNotBoundary };

/// Which computation produced a value. Values of the same quantity from
/// different sources must agree.
enum class FutakiSource { ClosedForm, SymbolicEngine, FlopCorrection, FlopTrilinear, FlopClosedForm };

std::string to_string(FutakiBranch branch);
std::string to_string(FutakiSource source);

/// Futaki invariant of a deformation to the normal cone as a polynomial in
/// (b, c). `value` is the numerator over the positive `denominator`.
struct FutakiPoly {
  MPoly value;
  MPoly denominator = MPoly(1);
  FutakiBranch branch = FutakiBranch::ZNotBoundary;
  FutakiSource provenance = FutakiSource::ClosedForm;
};

/// Generalized Futaki invariant for the test polarization p_S^*L - cE,
/// without assuming L = -K - (1-b)C. The numerator is
///   2 mu L_X^3 + 3 L^2 (K_X - p^*K_P1 + (1-b) D).L_X^2,  mu = -(K + (1-b)C).L,
/// over the denominator L^2. Throws DegeneratePolarizationError if L^2 = 0.
FutakiPoly general_futaki(const DNCConfig& config, const BetaClass& l);
FutakiPoly general_futaki(const DNCConfig& config);

/// Closed form for L = -K - (1-b)C:
///   Z = C:  (6bc - 3c^2) L.Z + (2c^3 - 3c^2 b) Z^2
///   Z != C: (6c - 3c^2) L.Z + (2c^3 - 3c^2) Z^2
/// Throws PolarizationMismatchError when the polarization is different.
FutakiPoly slope_futaki(const DNCConfig& config);

/// mu = -(K + (1-b)C).L, the weight of L_X^3 in the numerator.
MPoly futaki_mu(const DNCConfig& config, const BetaClass& l);

/// True when the configured polarization is -K - (1-b)C.
bool has_log_polarization(const DNCConfig& config);

/// c-window (0, epsilon(S, Z, L_b)) on which p_S^*L_b - cE is relatively ample.
SeshadriResult p_ample_window(const DNCConfig& config, const Interval& beta_window = Interval::unit_beta());

}  // namespace flopslope
