#pragma once

#include <stdexcept>
#include <string>

namespace qfrank {

/// Input rejected by an operation's precondition (CLI exit status 2).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource limit was hit before the result was known
/// (CLI exit status 3).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QFRANK_DEFINE_ERROR(Name, Base)          \
  class Name : public Base {                     \
   public:                                       \
    explicit Name(const std::string& what)       \
        : Base(std::string(#Name ": ") + what) {} \
  };

QFRANK_DEFINE_ERROR(FactorizationBudgetExceeded, BudgetExceeded)
QFRANK_DEFINE_ERROR(ClassBudgetExceeded, BudgetExceeded)

QFRANK_DEFINE_ERROR(InvalidDiscriminant, InvalidInput)
QFRANK_DEFINE_ERROR(SquareDiscriminant, InvalidInput)
QFRANK_DEFINE_ERROR(NotDefinite, InvalidInput)
QFRANK_DEFINE_ERROR(NotIndefinite, InvalidInput)
QFRANK_DEFINE_ERROR(NotPrimitive, InvalidInput)
QFRANK_DEFINE_ERROR(DiscriminantMismatch, InvalidInput)
QFRANK_DEFINE_ERROR(NotFundamental, InvalidInput)
QFRANK_DEFINE_ERROR(ZeroU, InvalidInput)
QFRANK_DEFINE_ERROR(InvalidParams, InvalidInput)
QFRANK_DEFINE_ERROR(InvalidD, InvalidInput)
QFRANK_DEFINE_ERROR(Overflow, InvalidInput)

#undef QFRANK_DEFINE_ERROR

}  // namespace qfrank
