#pragma once

#include <stdexcept>
#include <string>

namespace chiral {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHIRAL_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

CHIRAL_DEFINE_ERROR(NumericError);
CHIRAL_DEFINE_ERROR(InvalidInput);
CHIRAL_DEFINE_ERROR(RankError);
CHIRAL_DEFINE_ERROR(InfinitePoint);
CHIRAL_DEFINE_ERROR(InfiniteCamera);
CHIRAL_DEFINE_ERROR(EpipolarViolation);
CHIRAL_DEFINE_ERROR(DegenerateCorner);
CHIRAL_DEFINE_ERROR(DegenerateWall);
CHIRAL_DEFINE_ERROR(DegenerateInput);
CHIRAL_DEFINE_ERROR(InconclusiveD);
CHIRAL_DEFINE_ERROR(IrregularPair);
CHIRAL_DEFINE_ERROR(UpgradeInfeasible);
CHIRAL_DEFINE_ERROR(NotFeasible);
CHIRAL_DEFINE_ERROR(DimensionError);
CHIRAL_DEFINE_ERROR(DegeneratePencil);
CHIRAL_DEFINE_ERROR(DegenerateConics);
CHIRAL_DEFINE_ERROR(FactorizationError);
CHIRAL_DEFINE_ERROR(IncidenceViolation);

#undef CHIRAL_DEFINE_ERROR

}  // namespace chiral
