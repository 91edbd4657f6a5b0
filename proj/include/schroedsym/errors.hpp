#pragma once

#include <stdexcept>
#include <string>

namespace schroedsym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SCHROEDSYM_DEFINE_ERROR(Name)   \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

SCHROEDSYM_DEFINE_ERROR(DeterminantError)
SCHROEDSYM_DEFINE_ERROR(SingularTime)
SCHROEDSYM_DEFINE_ERROR(BranchError)
SCHROEDSYM_DEFINE_ERROR(DomainError)
SCHROEDSYM_DEFINE_ERROR(ZeroParameter)
SCHROEDSYM_DEFINE_ERROR(ShapeError)
SCHROEDSYM_DEFINE_ERROR(RangeError)
SCHROEDSYM_DEFINE_ERROR(IntegrationError)
SCHROEDSYM_DEFINE_ERROR(ConvergenceError)
SCHROEDSYM_DEFINE_ERROR(QuadratureError)
SCHROEDSYM_DEFINE_ERROR(NoRootError)
SCHROEDSYM_DEFINE_ERROR(OrderError)
SCHROEDSYM_DEFINE_ERROR(FamilyMismatch)
SCHROEDSYM_DEFINE_ERROR(ConfigError)

#undef SCHROEDSYM_DEFINE_ERROR

}  // namespace schroedsym
