#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boltzmann {

enum class ErrorCode {
  DomainError,
  EccentricityError,
  NotOnOrbit,
  DegenerateReflection,
  TangentHit,
  NoFurtherIntersection,
  RootIsolationFailure,
  EmptyPartition,
  MapFailureRate,
  ConvergenceFailure,
  IndexOutOfRange,
  NeighborhoodInvalid,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code identifies the failure
/// class; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace boltzmann
