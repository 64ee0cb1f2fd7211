#pragma once

#include <stdexcept>
#include <string>

namespace orthant {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ORTHANT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what = #Name) : Error(what) {} \
  }

ORTHANT_DEFINE_ERROR(ParseError);
ORTHANT_DEFINE_ERROR(ShapeMismatch);
ORTHANT_DEFINE_ERROR(DegeneratePolyhedron);
ORTHANT_DEFINE_ERROR(EmptyPolyhedron);
ORTHANT_DEFINE_ERROR(EmptyOrLowerDimensional);
ORTHANT_DEFINE_ERROR(DimensionTooLarge);
ORTHANT_DEFINE_ERROR(DimensionMismatch);
ORTHANT_DEFINE_ERROR(WrongDimension);
ORTHANT_DEFINE_ERROR(TooManyNeedles);
ORTHANT_DEFINE_ERROR(TooManyFacets);
ORTHANT_DEFINE_ERROR(NotRealizable);
ORTHANT_DEFINE_ERROR(NotOrthant);
ORTHANT_DEFINE_ERROR(NoKernel);
ORTHANT_DEFINE_ERROR(InvalidWitness);
ORTHANT_DEFINE_ERROR(UnboundedPolyhedron);
ORTHANT_DEFINE_ERROR(RecessionNotStrictlyPositive);
ORTHANT_DEFINE_ERROR(NotExactlyRepresentable);

#undef ORTHANT_DEFINE_ERROR

}  // namespace orthant
