#include "flopslope/surface/pair.hpp"

#include <algorithm>
#include <functional>

namespace flopslope {

namespace {

void require_integral_self_intersection(const DivisorClass& d, const std::string& what) {
  if (!intersect(d, d).is_integer()) throw InvalidClassError(what + " has non-integral self-intersection");
}

}  // namespace

SurfacePair::SurfacePair(std::string name, LatticePtr lattice, DivisorClass boundary,
                         std::vector<MoriGenerator> generators, Provenance provenance)
    : name_(std::move(name)),
      lattice_(std::move(lattice)),
      boundary_(std::move(boundary)),
      generators_(std::move(generators)),
      provenance_(std::move(provenance)) {
  require_same_lattice(lattice_, boundary_.lattice());
  if (boundary_.is_zero()) throw InvalidClassError("boundary class is zero");
  require_integral_self_intersection(boundary_, "boundary");
  for (const auto& g : generators_) {
    require_same_lattice(lattice_, g.curve.lattice());
    if (g.curve.is_zero()) throw InvalidClassError("Mori generator '" + g.label + "' is zero");
    require_integral_self_intersection(g.curve, "Mori generator '" + g.label + "'");
    if (adjunction_genus(*this, g.curve) < 0) {
      throw InvalidClassError("Mori generator '" + g.label + "' has negative arithmetic genus");
    }
  }
}

BetaClass SurfacePair::log_polarization() const {
  DivisorClass minus_k_minus_c = -canonical() - boundary_;
  return BetaClass(minus_k_minus_c, boundary_);
}

SurfacePair SurfacePair::with_name(std::string name) const {
  SurfacePair out = *this;
  out.name_ = std::move(name);
  return out;
}

SurfacePair SurfacePair::with_z(DivisorClass z) const {
  require_same_lattice(lattice_, z.lattice());
  if (z.is_zero()) throw InvalidClassError("Z is the zero class");
  SurfacePair out = *this;
  out.z_ = std::move(z);
  return out;
}

SurfacePair SurfacePair::with_generators(std::vector<MoriGenerator> generators) const {
  SurfacePair out(name_, lattice_, boundary_, std::move(generators), provenance_);
  out.z_ = z_;
  return out;
}

SurfacePair projective_plane(RationalVector boundary, std::string name) {
  RationalMatrix gram(1, 1);
  gram(0, 0) = 1;
  RationalVector k(1);
  k(0) = -3;
  LatticePtr lattice = PicardLattice::make({"H"}, gram, k);
  Provenance prov;
  prov.minimal_model = "P2";
  return SurfacePair(std::move(name), lattice, lattice->make_class(std::move(boundary)), {{"H", lattice->basis(0)}},
                     prov);
}

SurfacePair hirzebruch(int n, RationalVector boundary, std::string name) {
  if (n < 0) throw InvalidConfigError("Hirzebruch index must be nonnegative");
  RationalMatrix gram(2, 2);
  gram << Rational(-n), Rational(1), Rational(1), Rational(0);
  RationalVector k(2);
  k << Rational(-2), Rational(-(n + 2));
  LatticePtr lattice = PicardLattice::make({"E", "F"}, gram, k);
  Provenance prov;
  prov.minimal_model = "F" + std::to_string(n);
  if (name.empty()) name = prov.minimal_model;
  return SurfacePair(std::move(name), lattice, lattice->make_class(std::move(boundary)),
                     {{"E", lattice->basis(0)}, {"F", lattice->basis(1)}}, prov);
}

SurfacePair minimal_model(const std::string& tag, RationalVector boundary) {
  if (tag == "P2") return projective_plane(std::move(boundary));
  if (tag.size() == 2 && tag[0] == 'F' && tag[1] >= '0' && tag[1] <= '9') {
    return hirzebruch(tag[1] - '0', std::move(boundary));
  }
  throw InvalidConfigError("unknown minimal model '" + tag + "'");
}

namespace {

// Multiplicity vectors m with sum m = 3d - 1 and sum m^2 = d^2 + 1, each
// entry in 0..3: the (-1)-classes d H - sum m_i e_i with d >= 1.
std::vector<std::pair<int, std::vector<int>>> minus_one_classes(int r) {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (int d = 1; d <= 6; ++d) {
    std::vector<int> m(static_cast<std::size_t>(r), 0);
    std::function<void(int, int, int)> rec = [&](int i, int sum, int sq) {
      if (sum > 3 * d - 1 || sq > d * d + 1) return;
      if (i == r) {
        if (sum == 3 * d - 1 && sq == d * d + 1) out.emplace_back(d, m);
        return;
      }
      for (int v = 0; v <= std::min(3, d); ++v) {
        m[static_cast<std::size_t>(i)] = v;
        rec(i + 1, sum + v, sq + v * v);
      }
      m[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, 0, 0);
  }
  return out;
}

bool is_bare_plane(const SurfacePair& pair) {
  return pair.provenance().minimal_model == "P2" && !pair.provenance().parent && pair.lattice()->rank() == 1;
}

void add_unique(std::vector<MoriGenerator>& gens, MoriGenerator g) {
  for (const auto& h : gens) {
    if (h.curve == g.curve) return;
  }
  gens.push_back(std::move(g));
}

}  // namespace

BlowupResult blow_up(const PairPtr& pair, const std::vector<BlowupPoint>& points,
                     const std::optional<DivisorClass>& z_in) {
  std::optional<DivisorClass> z = z_in ? z_in : pair->z();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.infinitely_near_to) {
      throw InfinitelyNearError("point " + std::to_string(i + 1) + " is infinitely near point " +
                                std::to_string(*p.infinitely_near_to + 1) + "; only distinct points are supported");
    }
    if (p.tangent_dir_equals_z && !(p.on_boundary && p.on_z)) {
      throw ConstructionError("point " + std::to_string(i + 1) + ": tangency flag needs the point on both C and Z");
    }
    if (p.on_z && !z) throw ConstructionError("point " + std::to_string(i + 1) + " lies on Z but no Z was given");
  }
  if (z) require_same_lattice(pair->lattice(), z->lattice());

  const PicardLattice& old = *pair->lattice();
  Eigen::Index n = old.rank();
  auto r = static_cast<Eigen::Index>(points.size());

  BlowupResult result;
  if (r == 0) {
    result.pair = pair;
    result.pullback = RationalMatrix::Identity(n, n);
    result.z_transform = z;
    return result;
  }

  int existing = 0;
  for (const auto& label : old.labels()) {
    if (label.size() >= 2 && label[0] == 'e' && std::all_of(label.begin() + 1, label.end(), ::isdigit)) ++existing;
  }
  std::vector<std::string> labels = old.labels();
  for (Eigen::Index i = 0; i < r; ++i) labels.push_back("e" + std::to_string(existing + i + 1));

  RationalMatrix gram = RationalMatrix::Constant(n + r, n + r, Rational(0));
  gram.topLeftCorner(n, n) = old.gram();
  for (Eigen::Index i = 0; i < r; ++i) gram(n + i, n + i) = -1;
  RationalVector k(n + r);
  k.head(n) = old.canonical_coefficients();
  for (Eigen::Index i = 0; i < r; ++i) k(n + i) = 1;
  LatticePtr lattice = PicardLattice::make(std::move(labels), std::move(gram), std::move(k));

  result.pullback = RationalMatrix::Constant(n + r, n, Rational(0));
  for (Eigen::Index i = 0; i < n; ++i) result.pullback(i, i) = 1;

  auto pull = [&](const DivisorClass& d) {
    RationalVector v = RationalVector::Constant(n + r, Rational(0));
    v.head(n) = d.coefficients();
    return lattice->make_class(std::move(v));
  };
  auto transform = [&](const DivisorClass& d, const std::function<bool(const BlowupPoint&)>& on) {
    DivisorClass out = pull(d);
    RationalVector v = out.coefficients();
    for (Eigen::Index i = 0; i < r; ++i) {
      if (on(points[static_cast<std::size_t>(i)])) v(n + i) -= 1;
    }
    return lattice->make_class(std::move(v));
  };

  for (Eigen::Index i = 0; i < r; ++i) result.exceptionals.push_back(lattice->basis(n + i));
  DivisorClass boundary = transform(pair->boundary(), [](const BlowupPoint& p) { return p.on_boundary; });
  if (z) result.z_transform = transform(*z, [](const BlowupPoint& p) { return p.on_z; });

  // Curves of negative self-intersection coming from C and Z.
  std::vector<MoriGenerator> special;
  auto consider = [&](const DivisorClass& d) {
    if (intersect(d, d).sign() < 0) add_unique(special, {d.str(), d});
  };

  std::vector<MoriGenerator> gens;
  if (is_bare_plane(*pair) && r <= 8) {
    for (const auto& e : result.exceptionals) add_unique(gens, {e.str(), e});
    if (r == 1) {
      DivisorClass c = lattice->basis(0) - lattice->basis(1);
      add_unique(gens, {c.str(), c});
    } else {
      for (const auto& [d, m] : minus_one_classes(static_cast<int>(r))) {
        RationalVector v = RationalVector::Constant(n + r, Rational(0));
        v(0) = d;
        for (Eigen::Index i = 0; i < r; ++i) v(n + i) = -m[static_cast<std::size_t>(i)];
        DivisorClass c = lattice->make_class(std::move(v));
        add_unique(gens, {c.str(), c});
      }
    }
  } else {
    for (const auto& g : pair->mori_generators()) {
      DivisorClass t = pull(g.curve);
      if (g.curve == pair->boundary()) {
        t = boundary;
      } else if (z && g.curve == *z) {
        t = *result.z_transform;
      }
      add_unique(gens, {t.str(), t});
    }
    for (const auto& e : result.exceptionals) add_unique(gens, {e.str(), e});
  }
  consider(boundary);
  if (result.z_transform) consider(*result.z_transform);
  for (const auto& s : special) add_unique(gens, s);
  // A class meeting an irreducible negative curve negatively is not irreducible.
  std::vector<MoriGenerator> kept;
  for (const auto& g : gens) {
    bool reducible = false;
    for (const auto& s : special) {
      if (!(g.curve == s.curve) && intersect(g.curve, s.curve).sign() < 0) reducible = true;
    }
    if (!reducible) kept.push_back(g);
  }

  Provenance prov;
  prov.minimal_model = pair->provenance().minimal_model;
  prov.points = points;
  prov.parent = pair;
  prov.parent_z = z;
  for (Eigen::Index i = 0; i < r; ++i) prov.exceptional_indices.push_back(n + i);

  SurfacePair blown("Bl" + std::to_string(r) + "(" + pair->name() + ")", lattice, boundary, std::move(kept), prov);
  if (result.z_transform) blown = blown.with_z(*result.z_transform);
  result.pair = std::make_shared<const SurfacePair>(std::move(blown));
  return result;
}

DivisorClass pull_back(const BlowupResult& map, const DivisorClass& cls) {
  if (cls.size() != map.pullback.cols()) throw LatticeMismatchError("class is not on the blown-up surface's parent");
  RationalVector v(map.pullback.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational acc = 0;
    for (Eigen::Index j = 0; j < cls.size(); ++j) {
      if (!map.pullback(i, j).is_zero()) acc += map.pullback(i, j) * cls[j];
    }
    v(i) = acc;
  }
  return map.pair->lattice()->make_class(std::move(v));
}

DivisorClass proper_transform(const BlowupResult& map, const DivisorClass& cls,
                              const std::vector<long long>& multiplicities) {
  if (multiplicities.size() != map.exceptionals.size()) {
    throw InvalidConfigError("one multiplicity per blown-up point is required");
  }
  DivisorClass out = pull_back(map, cls);
  for (std::size_t i = 0; i < multiplicities.size(); ++i) {
    if (multiplicities[i] < 0) throw InvalidConfigError("multiplicities must be nonnegative");
    out -= Rational(multiplicities[i]) * map.exceptionals[i];
  }
  return out;
}

DivisorClass push_forward(const SurfacePair& pair, const DivisorClass& cls) {
  const auto& parent = pair.provenance().parent;
  if (!parent) throw ConstructionError("pair '" + pair.name() + "' has no recorded parent");
  require_same_lattice(pair.lattice(), cls.lattice());
  Eigen::Index n = parent->lattice()->rank();
  return parent->lattice()->make_class(cls.coefficients().head(n));
}

Integer adjunction_genus(const SurfacePair& pair, const DivisorClass& d) {
  Rational s = intersect(pair.canonical(), d) + intersect(d, d);
  if (!s.is_integer() || s.numerator() % 2 != 0) {
    throw GenusParityError("K.D + D^2 = " + s.str() + " is not an even integer for D = " + d.str());
  }
  return 1 + s.numerator() / 2;
}

Rational k_plus_c_squared(const SurfacePair& pair) {
  DivisorClass kc = pair.canonical() + pair.boundary();
  return intersect(kc, kc);
}

}  // namespace flopslope
