#ifndef QUANTSCOPE_ERROR_HPP
#define QUANTSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace quantscope {

enum class ErrorCode {
  UnknownConcept,
  UnknownPredicate,
  UnresolvableSymbol,
  InvalidKnowledgeBase,
  MajorityHasNoContradictoryCorner,
  NotOCorner,
  InvalidFormula,
  NotEventuallyPeriodic,
  BoundTooLarge,
  InvalidSchedule,
  InfiniteRestriction,
};

std::string_view to_string(ErrorCode code) noexcept;

// Thrown when an operation's precondition or a domain constraint is violated.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace quantscope

#endif // QUANTSCOPE_ERROR_HPP
