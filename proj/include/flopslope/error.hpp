#pragma once

#include <stdexcept>
#include <string>

namespace flopslope {

/// Base of every error raised by the engine. `kind()` is a stable short tag
/// that the CLI copies into reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FLOPSLOPE_DEFINE_ERROR(Name, tag)                                 \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message) : Error(tag, message) {}    \
  }

// exactmath
FLOPSLOPE_DEFINE_ERROR(MissingVariableError, "missing-variable");
FLOPSLOPE_DEFINE_ERROR(UnknownVariableError, "unknown-variable");
FLOPSLOPE_DEFINE_ERROR(ZeroPolynomialError, "zero-polynomial");
FLOPSLOPE_DEFINE_ERROR(NotUnivariateError, "not-univariate");
FLOPSLOPE_DEFINE_ERROR(EmptyWindowError, "empty-window");
FLOPSLOPE_DEFINE_ERROR(ParseError, "parse");

// surface
FLOPSLOPE_DEFINE_ERROR(LatticeMismatchError, "lattice-mismatch");
FLOPSLOPE_DEFINE_ERROR(InvalidLatticeError, "invalid-lattice");
FLOPSLOPE_DEFINE_ERROR(InfinitelyNearError, "infinitely-near");
FLOPSLOPE_DEFINE_ERROR(GenusParityError, "genus-parity");
FLOPSLOPE_DEFINE_ERROR(EmptyGeneratorListError, "empty-generators");
FLOPSLOPE_DEFINE_ERROR(NotAmpleError, "not-ample");
FLOPSLOPE_DEFINE_ERROR(InvalidClassError, "invalid-class");

// dnc / flop / analyzer
FLOPSLOPE_DEFINE_ERROR(PolarizationMismatchError, "polarization-mismatch");
FLOPSLOPE_DEFINE_ERROR(DegeneratePolarizationError, "degenerate-polarization");
FLOPSLOPE_DEFINE_ERROR(ConstructionError, "construction-invalid");
FLOPSLOPE_DEFINE_ERROR(OutOfRangeError, "out-of-range");
FLOPSLOPE_DEFINE_ERROR(InvalidConfigError, "invalid-config");

#undef FLOPSLOPE_DEFINE_ERROR

}  // namespace flopslope
