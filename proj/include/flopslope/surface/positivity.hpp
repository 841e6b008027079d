#pragma once

#include "flopslope/exactmath/roots.hpp"
#include "flopslope/surface/pair.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flopslope {

struct AmpleCertificate {
  bool ample = false;
  Rational self_intersection;
  /// Label of the first generator with D.G <= 0, if any.
  std::optional<std::string> failing_generator;
  /// Exact inequalities checked, e.g. "D^2 = 8 > 0", "D.E = 1 > 0".
  std::vector<std::string> lines;
};

/// Nakai-Moishezon over the pair's generator list. Throws
/// EmptyGeneratorListError.
AmpleCertificate is_ample(const SurfacePair& pair, const DivisorClass& d);

struct AmpRegion {
  /// Lowest connected component of {b in (0,1] : L_b ample}, when nonempty.
  std::optional<RealInterval> region;
  /// Closure of the region contains 0.
  bool asymptotically_log_fano = false;
  std::vector<std::string> certificate;
};

AmpRegion amp_region(const SurfacePair& pair);

/// One b-interval on which the Seshadri constant is a single linear
/// polynomial in b.
struct SeshadriPiece {
  Interval beta_range;
  /// epsilon(b) from the binding generator.
  MPoly epsilon;
  std::string binding_generator;
  /// The self-intersection condition (L - cZ)^2 > 0 cuts in before the
  /// linear bound somewhere on this piece; `epsilon` is then only an upper
  /// bound and `quadratic` describes the true value.
  bool quadratic_binds = false;
  /// (L - cZ)^2 as a polynomial in b and c.
  MPoly quadratic;
};

struct SeshadriResult {
  std::vector<SeshadriPiece> pieces;
  /// No generator meets Z positively and (L - cZ)^2 never vanishes.
  bool unbounded = false;

  /// The single linear expression when there is one unflagged piece.
  std::optional<MPoly> linear() const;
  /// Value at a rational b inside some piece.
  std::optional<Rational> at(const Rational& beta) const;
};

/// sup{c : L_b - cZ ample} over the given b-window, as the minimum over
/// generators G with Z.G > 0 of L_b.G / Z.G.
SeshadriResult seshadri(const SurfacePair& pair, const DivisorClass& z, const BetaClass& l,
                        const Interval& beta_window = Interval::unit_beta());

enum class CertificateStatus { Certified, Unknown };

struct PseffCertificate {
  CertificateStatus status = CertificateStatus::Unknown;
  /// epsilon(S, Z, L) on the parent: the certified lower bound for the
  /// pseudoeffective threshold of (S', Z', L').
  std::optional<SeshadriResult> threshold;
  /// The bigness decomposition holds for c >= this (max_i delta_i / m_i).
  std::optional<MPoly> valid_from;
  std::vector<std::string> lines;
};

/// Certifies L' - cZ' big through L' - cZ' = pi^*(L - cZ) + sum (c m_i - delta_i) e_i.
PseffCertificate pseff_threshold_certificate(const SurfacePair& blown, const DivisorClass& z_prime,
                                             const BetaClass& l_prime,
                                             const Interval& beta_window = Interval::unit_beta());

}  // namespace flopslope
