#include "flopslope/surface/lattice.hpp"

#include <algorithm>

namespace flopslope {

Inertia inertia(const RationalMatrix& symmetric) {
  RationalMatrix a = symmetric;
  std::vector<Eigen::Index> live(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) live[static_cast<std::size_t>(i)] = i;
  Inertia out;
  while (!live.empty()) {
    auto pivot = std::find_if(live.begin(), live.end(), [&](Eigen::Index i) { return !a(i, i).is_zero(); });
    if (pivot == live.end()) {
      // all diagonal entries vanish: pair up an off-diagonal entry
      bool found = false;
      for (std::size_t x = 0; x < live.size() && !found; ++x) {
        for (std::size_t y = x + 1; y < live.size() && !found; ++y) {
          Eigen::Index i = live[x];
          Eigen::Index j = live[y];
          if (a(i, j).is_zero()) continue;
          for (Eigen::Index k : live) a(i, k) += a(j, k);
          for (Eigen::Index k : live) a(k, i) += a(k, j);
          found = true;
        }
      }
      if (!found) {
        out.zero += static_cast<int>(live.size());
        break;
      }
      continue;
    }
    Eigen::Index p = *pivot;
    Rational d = a(p, p);
    (d.sign() > 0 ? out.positive : out.negative) += 1;
    live.erase(pivot);
    for (Eigen::Index j : live) {
      if (a(j, p).is_zero()) continue;
      Rational f = a(j, p) / d;
      for (Eigen::Index k : live) a(j, k) -= f * a(p, k);
    }
  }
  return out;
}

template <typename Scalar>
LatticeClass<Scalar>::LatticeClass(LatticePtr lattice, Vector<Scalar> coefficients)
    : lattice_(std::move(lattice)), coeffs_(std::move(coefficients)) {
  if (!lattice_) throw InvalidClassError("class without a lattice");
  if (coeffs_.size() != lattice_->rank()) {
    throw InvalidClassError("class has " + std::to_string(coeffs_.size()) + " coefficients, lattice rank is " +
                            std::to_string(lattice_->rank()));
  }
}

template <typename Scalar>
bool LatticeClass<Scalar>::is_zero() const {
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_(i).is_zero()) return false;
  }
  return true;
}

template <typename Scalar>
LatticeClass<Scalar>& LatticeClass<Scalar>::operator+=(const LatticeClass& rhs) {
  require_same_lattice(lattice_, rhs.lattice_);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) += rhs.coeffs_(i);
  return *this;
}

template <typename Scalar>
LatticeClass<Scalar>& LatticeClass<Scalar>::operator-=(const LatticeClass& rhs) {
  require_same_lattice(lattice_, rhs.lattice_);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) -= rhs.coeffs_(i);
  return *this;
}

namespace {

std::string coefficient_text(const Rational& q) { return q.str(); }
std::string coefficient_text(const MPoly& p) {
  if (p.terms().size() <= 1) return p.str();
  return "(" + p.str() + ")";
}

}  // namespace

template <typename Scalar>
std::string LatticeClass<Scalar>::str() const {
  std::string out;
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_(i).is_zero()) continue;
    std::string c = coefficient_text(coeffs_(i));
    const std::string& label = lattice_->labels()[static_cast<std::size_t>(i)];
    if (c == "1") {
      c.clear();
    } else if (c == "-1") {
      c = "-";
    } else {
      c += "*";
    }
    if (!out.empty() && c.front() != '-') out += "+";
    out += c + label;
  }
  return out.empty() ? "0" : out;
}

template class LatticeClass<Rational>;
template class LatticeClass<MPoly>;

PicardLattice::PicardLattice(std::vector<std::string> labels, RationalMatrix gram, RationalVector canonical)
    : labels_(std::move(labels)), gram_(std::move(gram)), canonical_(std::move(canonical)) {}

LatticePtr PicardLattice::make(std::vector<std::string> labels, RationalMatrix gram, RationalVector canonical) {
  auto n = static_cast<Eigen::Index>(labels.size());
  if (n == 0) throw InvalidLatticeError("lattice needs at least one generator");
  if (gram.rows() != n || gram.cols() != n) throw InvalidLatticeError("Gram matrix does not match the basis size");
  if (canonical.size() != n) throw InvalidLatticeError("canonical class does not match the basis size");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) throw InvalidLatticeError("duplicate basis label '" + labels[i] + "'");
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (gram(i, j) != gram(j, i)) throw InvalidLatticeError("Gram matrix is not symmetric");
    }
  }
  Inertia s = inertia(gram);
  if (s.positive != 1 || s.zero != 0) {
    throw InvalidLatticeError("intersection form must have signature (1, " + std::to_string(n - 1) + "), got (" +
                              std::to_string(s.positive) + ", " + std::to_string(s.negative) + ") with " +
                              std::to_string(s.zero) + " null directions");
  }
  return LatticePtr(new PicardLattice(std::move(labels), std::move(gram), std::move(canonical)));
}

DivisorClass PicardLattice::canonical() const { return make_class(canonical_); }

Eigen::Index PicardLattice::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidClassError("unknown basis label '" + label + "'");
  return static_cast<Eigen::Index>(it - labels_.begin());
}

DivisorClass PicardLattice::zero() const {
  return DivisorClass(shared_from_this(), RationalVector::Constant(rank(), Rational(0)));
}

DivisorClass PicardLattice::basis(Eigen::Index i) const {
  RationalVector v = RationalVector::Constant(rank(), Rational(0));
  v(i) = 1;
  return DivisorClass(shared_from_this(), std::move(v));
}

DivisorClass PicardLattice::make_class(RationalVector coefficients) const {
  return DivisorClass(shared_from_this(), std::move(coefficients));
}

DivisorClass PicardLattice::make_class(std::initializer_list<Rational> coefficients) const {
  RationalVector v(static_cast<Eigen::Index>(coefficients.size()));
  Eigen::Index i = 0;
  for (const auto& q : coefficients) v(i++) = q;
  return make_class(std::move(v));
}

bool PicardLattice::same_as(const PicardLattice& other) const {
  if (this == &other) return true;
  if (labels_ != other.labels_) return false;
  for (Eigen::Index i = 0; i < rank(); ++i) {
    if (canonical_(i) != other.canonical_(i)) return false;
    for (Eigen::Index j = 0; j < rank(); ++j) {
      if (gram_(i, j) != other.gram_(i, j)) return false;
    }
  }
  return true;
}

void require_same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (!a || !b || !a->same_as(*b)) throw LatticeMismatchError("classes live on different Picard lattices");
}

Rational intersect(const DivisorClass& a, const DivisorClass& b) {
  require_same_lattice(a.lattice(), b.lattice());
  return bilinear<Rational>(a.coefficients(), a.lattice()->gram(), b.coefficients());
}

MPoly intersect(const PolyClass& a, const PolyClass& b) {
  require_same_lattice(a.lattice(), b.lattice());
  return bilinear<MPoly>(a.coefficients(), a.lattice()->gram(), b.coefficients());
}

MPoly intersect(const PolyClass& a, const DivisorClass& b) { return intersect(a, to_poly(b)); }
MPoly intersect(const DivisorClass& a, const PolyClass& b) { return intersect(to_poly(a), b); }

PolyClass to_poly(const DivisorClass& d) { return PolyClass(d.lattice(), flopslope::to_poly(d.coefficients())); }

BetaClass::BetaClass(DivisorClass base_, DivisorClass slope_) : base(std::move(base_)), slope(std::move(slope_)) {
  require_same_lattice(base.lattice(), slope.lattice());
}

DivisorClass BetaClass::at(const Rational& beta) const { return base + beta * slope; }

PolyClass BetaClass::poly() const {
  MPoly b = MPoly::variable(Symbol::beta());
  PolyVector v(base.size());
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    v(i) = MPoly(base[i]) + MPoly(slope[i]) * b;
    v(i).declare(Symbol::beta());
  }
  return PolyClass(base.lattice(), std::move(v));
}

std::string BetaClass::str() const { return poly().str(); }

MPoly intersect(const BetaClass& a, const DivisorClass& b) {
  MPoly out = intersect(a.poly(), b);
  out.declare(Symbol::beta());
  return out;
}

MPoly intersect(const BetaClass& a, const BetaClass& b) {
  MPoly out = intersect(a.poly(), b.poly());
  out.declare(Symbol::beta());
  return out;
}

}  // namespace flopslope
