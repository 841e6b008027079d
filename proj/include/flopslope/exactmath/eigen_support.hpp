#pragma once

// Lets Eigen dense types carry exact scalars.

#include "flopslope/exactmath/mpoly.hpp"
#include "flopslope/exactmath/rational.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<flopslope::Rational> : GenericNumTraits<flopslope::Rational> {
  using Real = flopslope::Rational;
  using NonInteger = flopslope::Rational;
  using Literal = flopslope::Rational;
  using Nested = flopslope::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };

  static inline flopslope::Rational epsilon() { return 0; }
  static inline flopslope::Rational dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<flopslope::MPoly> : GenericNumTraits<flopslope::MPoly> {
  using Real = flopslope::MPoly;
  using NonInteger = flopslope::MPoly;
  using Literal = flopslope::MPoly;
  using Nested = flopslope::MPoly;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256
  };

  static inline flopslope::MPoly epsilon() { return 0; }
  static inline flopslope::MPoly dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace flopslope {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;
using PolyVector = Vector<MPoly>;

/// Exact bilinear form x^T G y. Written out by hand so no floating-point
/// kernels or epsilon logic are involved.
template <typename Scalar>
Scalar bilinear(const Vector<Scalar>& x, const RationalMatrix& gram, const Vector<Scalar>& y) {
  Scalar acc(0);
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if (x(i).is_zero()) continue;
    }
    Scalar row(0);
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (gram(i, j).is_zero()) continue;
      row += Scalar(gram(i, j)) * y(j);
    }
    acc += x(i) * row;
  }
  return acc;
}

/// Promotes a rational vector to polynomial entries.
inline PolyVector to_poly(const RationalVector& v) {
  PolyVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = MPoly(v(i));
  return out;
}

}  // namespace flopslope
