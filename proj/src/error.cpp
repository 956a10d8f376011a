#include "quantscope/error.hpp"

namespace quantscope {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::UnknownConcept: return "UnknownConcept";
  case ErrorCode::UnknownPredicate: return "UnknownPredicate";
  case ErrorCode::UnresolvableSymbol: return "UnresolvableSymbol";
  case ErrorCode::InvalidKnowledgeBase: return "InvalidKnowledgeBase";
  case ErrorCode::MajorityHasNoContradictoryCorner: return "MajorityHasNoContradictoryCorner";
  case ErrorCode::NotOCorner: return "NotOCorner";
  case ErrorCode::InvalidFormula: return "InvalidFormula";
  case ErrorCode::NotEventuallyPeriodic: return "NotEventuallyPeriodic";
  case ErrorCode::BoundTooLarge: return "BoundTooLarge";
  case ErrorCode::InvalidSchedule: return "InvalidSchedule";
  case ErrorCode::InfiniteRestriction: return "InfiniteRestriction";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

} // namespace quantscope
