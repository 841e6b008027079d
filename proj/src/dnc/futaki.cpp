#include "flopslope/dnc/futaki.hpp"

namespace flopslope {

std::string to_string(FutakiBranch branch) { return branch == FutakiBranch::ZIsBoundary ? "Z=C" : "Z!=C"; }

std::string to_string(FutakiSource source) {
  switch (source) {
    case FutakiSource::ClosedForm: return "closed_form";
    case FutakiSource::SymbolicEngine: return "symbolic_engine";
    case FutakiSource::FlopCorrection: return "flop_correction";
    case FutakiSource::FlopTrilinear: return "flop_trilinear";
    case FutakiSource::FlopClosedForm: return "flop_closed_form";
  }
  return "unknown";
}

namespace {

MPoly normalized(MPoly p) {
  p.declare(Symbol::beta());
  p.declare(Symbol::c());
  return p;
}

FutakiBranch branch_of(const DNCConfig& config) {
  return config.z_is_boundary() ? FutakiBranch::ZIsBoundary : FutakiBranch::ZNotBoundary;
}

}  // namespace

FutakiPoly general_futaki(const DNCConfig& config, const BetaClass& l) {
  require_same_lattice(config.pair()->lattice(), l.lattice());
  MPoly b = MPoly::variable(Symbol::beta());
  MPoly l_sq = intersect(l, l);
  if (l_sq.is_zero()) throw DegeneratePolarizationError("L^2 vanishes identically for L = " + l.str());

  MPoly mu = futaki_mu(config, l);

  ThreefoldClass lx = config.test_polarization(l);
  ThreefoldClass twist = config.relative_canonical() + (MPoly(1) - b) * config.boundary();
  MPoly value = MPoly(2) * mu * config.triple(lx, lx, lx) + MPoly(3) * l_sq * config.triple(twist, lx, lx);

  FutakiPoly out;
  out.value = normalized(value);
  out.denominator = l_sq;
  out.denominator.declare(Symbol::beta());
  out.branch = branch_of(config);
  out.provenance = FutakiSource::SymbolicEngine;
  return out;
}

MPoly futaki_mu(const DNCConfig& config, const BetaClass& l) {
  MPoly one_minus_b = MPoly(1) - MPoly::variable(Symbol::beta());
  PolyClass log_class = -(to_poly(config.pair()->canonical()) + one_minus_b * to_poly(config.pair()->boundary()));
  return intersect(log_class, l.poly());
}

FutakiPoly general_futaki(const DNCConfig& config) { return general_futaki(config, config.polarization()); }

bool has_log_polarization(const DNCConfig& config) {
  return config.polarization().poly() == config.pair()->log_polarization().poly();
}

FutakiPoly slope_futaki(const DNCConfig& config) {
  if (!has_log_polarization(config)) {
    throw PolarizationMismatchError("polarization " + config.polarization().str() + " is not -K-(1-b)C = " +
                                    config.pair()->log_polarization().str());
  }
  MPoly b = MPoly::variable(Symbol::beta());
  MPoly c = MPoly::variable(Symbol::c());
  MPoly l_dot_z = intersect(config.polarization(), config.z());
  MPoly z_sq(intersect(config.z(), config.z()));
  MPoly c2 = c * c;
  MPoly value;
  if (config.z_is_boundary()) {
    value = (MPoly(6) * b * c - MPoly(3) * c2) * l_dot_z + (MPoly(2) * c2 * c - MPoly(3) * c2 * b) * z_sq;
  } else {
    value = (MPoly(6) * c - MPoly(3) * c2) * l_dot_z + (MPoly(2) * c2 * c - MPoly(3) * c2) * z_sq;
  }
  FutakiPoly out;
  out.value = normalized(value);
  out.branch = branch_of(config);
  out.provenance = FutakiSource::ClosedForm;
  return out;
}

SeshadriResult p_ample_window(const DNCConfig& config, const Interval& beta_window) {
  return seshadri(*config.pair(), config.z(), config.polarization(), beta_window);
}

}  // namespace flopslope
