#pragma once

#include <stdexcept>
#include <string>

namespace qcqp {

/// Base class for all domain errors raised by this library. The CLI maps
/// these to exit code 1 with a machine-readable JSON payload on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define QCQP_DEFINE_ERROR(NAME)                             \
  class NAME : public Error {                               \
   public:                                                  \
    explicit NAME(const std::string& what = #NAME)          \
        : Error(#NAME, what) {}                             \
  }

QCQP_DEFINE_ERROR(DimensionMismatch);
QCQP_DEFINE_ERROR(NotPositiveDefinite);
QCQP_DEFINE_ERROR(NotPsd);
QCQP_DEFINE_ERROR(EigensolverFailure);
QCQP_DEFINE_ERROR(NotInGammaP);
QCQP_DEFINE_ERROR(AssumptionFailed);
QCQP_DEFINE_ERROR(NotOnBoundary);
QCQP_DEFINE_ERROR(FaceExtractionFailed);
QCQP_DEFINE_ERROR(WrongFaceCase);
QCQP_DEFINE_ERROR(GeneratorNotInGamma);
QCQP_DEFINE_ERROR(NotStrictlyFeasible);
QCQP_DEFINE_ERROR(GridTooLarge);
QCQP_DEFINE_ERROR(TooLarge);
QCQP_DEFINE_ERROR(NotInterior);
QCQP_DEFINE_ERROR(SubspaceTooSmall);
QCQP_DEFINE_ERROR(InvalidInstance);
QCQP_DEFINE_ERROR(UsageError);

#undef QCQP_DEFINE_ERROR

}  // namespace qcqp
