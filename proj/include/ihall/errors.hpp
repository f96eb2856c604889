#pragma once

#include <stdexcept>
#include <string>

namespace ihall {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define IHALL_ERROR(Name)                                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {}          \
  };

IHALL_ERROR(MixedParity)
IHALL_ERROR(NonIntegralCoefficient)
IHALL_ERROR(InconsistentSamples)
IHALL_ERROR(ParseError)
IHALL_ERROR(InvalidQuiver)
IHALL_ERROR(DimensionMismatch)
IHALL_ERROR(BudgetExceeded)
IHALL_ERROR(NotAModuleOfQ)
IHALL_ERROR(HoldoutMismatch)
IHALL_ERROR(NotMonomial)
IHALL_ERROR(CacheConflict)
IHALL_ERROR(NotInSpan)
IHALL_ERROR(OrderViolation)
IHALL_ERROR(NoSolution)
IHALL_ERROR(NonIntegral)
IHALL_ERROR(NotDominant)
IHALL_ERROR(NoDecomposition)

#undef IHALL_ERROR

}  // namespace ihall
