#pragma once

#include <stdexcept>
#include <string>

namespace dpomdp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DPOMDP_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

DPOMDP_DEFINE_ERROR(InvalidDistribution);
DPOMDP_DEFINE_ERROR(InvalidModel);
DPOMDP_DEFINE_ERROR(ImpossibleObservation);
DPOMDP_DEFINE_ERROR(StepOnTerminal);
DPOMDP_DEFINE_ERROR(UnclassifiableAction);
DPOMDP_DEFINE_ERROR(DegenerateObservationSpace);
DPOMDP_DEFINE_ERROR(SampleOffRock);
DPOMDP_DEFINE_ERROR(ModelTooLarge);
DPOMDP_DEFINE_ERROR(DivergenceDetected);
DPOMDP_DEFINE_ERROR(EmptyParticleSet);
DPOMDP_DEFINE_ERROR(ParticleDepletion);
DPOMDP_DEFINE_ERROR(EmptyGrid);
DPOMDP_DEFINE_ERROR(ConfigError);
DPOMDP_DEFINE_ERROR(DomainError);

#undef DPOMDP_DEFINE_ERROR

}  // namespace dpomdp
