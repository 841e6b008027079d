#pragma once

#include "flopslope/error.hpp"
#include "flopslope/exactmath/eigen_support.hpp"
#include "flopslope/exactmath/mpoly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace flopslope {

/// Signs of a symmetric form after exact congruence diagonalization.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

Inertia inertia(const RationalMatrix& symmetric);

class PicardLattice;
using LatticePtr = std::shared_ptr<const PicardLattice>;

/// A class on a Picard lattice, with coefficients in Scalar (Rational for
/// divisor classes, MPoly for symbolic families).
template <typename Scalar>
class LatticeClass {
 public:
  LatticeClass() = default;
  LatticeClass(LatticePtr lattice, Vector<Scalar> coefficients);

  const LatticePtr& lattice() const { return lattice_; }
  const Vector<Scalar>& coefficients() const { return coeffs_; }
  Eigen::Index size() const { return coeffs_.size(); }
  const Scalar& operator[](Eigen::Index i) const { return coeffs_(i); }

  bool is_zero() const;

  LatticeClass& operator+=(const LatticeClass& rhs);
  LatticeClass& operator-=(const LatticeClass& rhs);
  friend LatticeClass operator+(LatticeClass a, const LatticeClass& b) { return a += b; }
  friend LatticeClass operator-(LatticeClass a, const LatticeClass& b) { return a -= b; }
  LatticeClass operator-() const { return LatticeClass(lattice_, -coeffs_); }
  friend LatticeClass operator*(const Scalar& t, const LatticeClass& a) {
    Vector<Scalar> v = a.coeffs_;
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = t * v(i);
    return LatticeClass(a.lattice_, std::move(v));
  }

  friend bool operator==(const LatticeClass& a, const LatticeClass& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i) {
      if (!(a.coeffs_(i) == b.coeffs_(i))) return false;
    }
    return true;
  }

  /// "2*E+3*F" style rendering over the basis labels.
  std::string str() const;

 private:
  LatticePtr lattice_;
  Vector<Scalar> coeffs_;
};

using DivisorClass = LatticeClass<Rational>;
using PolyClass = LatticeClass<MPoly>;

/// Basis labels, symmetric Gram matrix and canonical class.
class PicardLattice : public std::enable_shared_from_this<PicardLattice> {
 public:
  /// Validates sizes, symmetry and the hyperbolic signature (one positive
  /// eigenvalue, nondegenerate); throws InvalidLatticeError.
  static LatticePtr make(std::vector<std::string> labels, RationalMatrix gram, RationalVector canonical);

  Eigen::Index rank() const { return static_cast<Eigen::Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const RationalMatrix& gram() const { return gram_; }
  const RationalVector& canonical_coefficients() const { return canonical_; }
  DivisorClass canonical() const;

  /// Index of a basis label; throws InvalidClassError.
  Eigen::Index index_of(const std::string& label) const;

  DivisorClass zero() const;
  DivisorClass basis(Eigen::Index i) const;
  DivisorClass make_class(RationalVector coefficients) const;
  DivisorClass make_class(std::initializer_list<Rational> coefficients) const;

  /// Structural equality of labels, Gram matrix and canonical class.
  bool same_as(const PicardLattice& other) const;

 private:
  PicardLattice(std::vector<std::string> labels, RationalMatrix gram, RationalVector canonical);
  std::vector<std::string> labels_;
  RationalMatrix gram_;
  RationalVector canonical_;
};

/// Throws LatticeMismatchError unless both lattices are the same.
void require_same_lattice(const LatticePtr& a, const LatticePtr& b);

Rational intersect(const DivisorClass& a, const DivisorClass& b);
MPoly intersect(const PolyClass& a, const PolyClass& b);
MPoly intersect(const PolyClass& a, const DivisorClass& b);
MPoly intersect(const DivisorClass& a, const PolyClass& b);

PolyClass to_poly(const DivisorClass& d);

/// base + b * slope: a family of classes linear in the cone parameter.
struct BetaClass {
  DivisorClass base;
  DivisorClass slope;

  BetaClass(DivisorClass base, DivisorClass slope);

  DivisorClass at(const Rational& beta) const;
  PolyClass poly() const;
  const LatticePtr& lattice() const { return base.lattice(); }
  std::string str() const;
};

MPoly intersect(const BetaClass& a, const DivisorClass& b);
MPoly intersect(const BetaClass& a, const BetaClass& b);

}  // namespace flopslope
