#pragma once

#include "flopslope/surface/lattice.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flopslope {

/// A point to blow up, described by its incidences with the boundary C and
/// with the curve Z.
struct BlowupPoint {
  bool on_boundary = false;
  bool on_z = false;
  /// C and Z share their tangent direction at the point. Needs both
  /// incidence flags.
  bool tangent_dir_equals_z = false;
  /// Index of an earlier point this one is infinitely near to; rejected.
  std::optional<int> infinitely_near_to;

  friend bool operator==(const BlowupPoint&, const BlowupPoint&) = default;
};

struct MoriGenerator {
  std::string label;
  DivisorClass curve;
};

class SurfacePair;
using PairPtr = std::shared_ptr<const SurfacePair>;

/// How a pair was obtained: a minimal model, possibly blown up.
struct Provenance {
  std::string minimal_model;
  /// Points of the last blow-up (empty for a minimal model).
  std::vector<BlowupPoint> points;
  /// The pair that was blown up, if any.
  PairPtr parent;
  /// Class on the parent whose proper transform is the recorded Z.
  std::optional<DivisorClass> parent_z;
  /// Lattice indices of the exceptional curves of the last blow-up.
  std::vector<Eigen::Index> exceptional_indices;
};

/// A surface (through its Picard lattice) with a boundary curve class and
/// generators of the cone of curves.
class SurfacePair {
 public:
  /// Throws InvalidClassError or GenusParityError on bad data.
  SurfacePair(std::string name, LatticePtr lattice, DivisorClass boundary, std::vector<MoriGenerator> generators,
              Provenance provenance = {});

  const std::string& name() const { return name_; }
  const LatticePtr& lattice() const { return lattice_; }
  const DivisorClass& boundary() const { return boundary_; }
  const std::vector<MoriGenerator>& mori_generators() const { return generators_; }
  const Provenance& provenance() const { return provenance_; }
  DivisorClass canonical() const { return lattice_->canonical(); }

  /// L_b = -K - (1-b) C, written as (-K-C) + b C.
  BetaClass log_polarization() const;

  /// The curve Z carried by the pair: set explicitly, or the proper
  /// transform of the Z supplied to blow_up.
  const std::optional<DivisorClass>& z() const { return z_; }
  SurfacePair with_name(std::string name) const;
  SurfacePair with_z(DivisorClass z) const;
  SurfacePair with_generators(std::vector<MoriGenerator> generators) const;

 private:
  std::string name_;
  LatticePtr lattice_;
  DivisorClass boundary_;
  std::vector<MoriGenerator> generators_;
  Provenance provenance_;
  std::optional<DivisorClass> z_;
};

/// Minimal models. `boundary` is given on the model's basis.
SurfacePair projective_plane(RationalVector boundary, std::string name = "P2");
/// Hirzebruch surface F_n with basis {E, F}, E^2 = -n.
SurfacePair hirzebruch(int n, RationalVector boundary, std::string name = "");
/// Dispatch on "P2", "F0".."F9".
SurfacePair minimal_model(const std::string& tag, RationalVector boundary);

struct BlowupResult {
  PairPtr pair;
  /// Rows: new basis, columns: old basis; maps old coefficients to the
  /// pulled-back class.
  RationalMatrix pullback;
  std::vector<DivisorClass> exceptionals;
  /// Proper transform of the supplied Z, if any.
  std::optional<DivisorClass> z_transform;
};

/// Blows up distinct points. The boundary becomes its proper transform,
/// K' = pi^*K + sum e_i, and the generator list is rebuilt. Throws
/// InfinitelyNearError and ConstructionError.
BlowupResult blow_up(const PairPtr& pair, const std::vector<BlowupPoint>& points,
                     const std::optional<DivisorClass>& z = std::nullopt);

DivisorClass pull_back(const BlowupResult& map, const DivisorClass& cls);
/// pi^* cls - sum m_i e_i.
DivisorClass proper_transform(const BlowupResult& map, const DivisorClass& cls, const std::vector<long long>& multiplicities);
/// Forgets the exceptional coordinates of the last blow-up of `pair`.
DivisorClass push_forward(const SurfacePair& pair, const DivisorClass& cls);

/// 1 + (K.D + D^2)/2; throws GenusParityError when K.D + D^2 is odd or
/// non-integral.
Integer adjunction_genus(const SurfacePair& pair, const DivisorClass& d);

/// (K + C)^2.
Rational k_plus_c_squared(const SurfacePair& pair);

}  // namespace flopslope
