#include "boltzmann/error.hpp"

namespace boltzmann {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EccentricityError: return "EccentricityError";
    case ErrorCode::NotOnOrbit: return "NotOnOrbit";
    case ErrorCode::DegenerateReflection: return "DegenerateReflection";
    case ErrorCode::TangentHit: return "TangentHit";
    case ErrorCode::NoFurtherIntersection: return "NoFurtherIntersection";
    case ErrorCode::RootIsolationFailure: return "RootIsolationFailure";
    case ErrorCode::EmptyPartition: return "EmptyPartition";
    case ErrorCode::MapFailureRate: return "MapFailureRate";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NeighborhoodInvalid: return "NeighborhoodInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace boltzmann
