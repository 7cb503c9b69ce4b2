#pragma once

#include <stdexcept>
#include <string>

namespace hle {

/// Base class for every failure raised by the engine. `kind()` is the stable
/// machine-readable name used in CLI reports (e.g. "DSquareNonzero").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Every concrete error kind, grouped by the module that raises it.
#define HLE_ERROR_KINDS(X)                                                          \
  X(AssociativityViolation) X(IdentityViolation) X(CompositionDomainError)          \
  X(UnknownObject) X(ShapeMismatch) X(FunctorialityViolation)                       \
  X(DSquareNonzero) X(ChainRuleViolation) X(TotalDSquareNonzero)                    \
  X(SimplicialIdentityViolation) X(NotLoopFree) X(EmptyComplex)                     \
  X(DepthExceeded) X(WeightRejected) X(TruncationTooShallow) X(NotComponentwiseWE) \
  X(NotNatural)                                                                     \
  X(SyntaxError) X(UnknownBinding) X(TypeMismatch) X(PresentationError)

#define HLE_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& message)                   \
        : Error(#Name, message) {}                              \
  };

HLE_ERROR_KINDS(HLE_DEFINE_ERROR)

#undef HLE_DEFINE_ERROR

/// Throws a copy of `e` with the same concrete type and `prefix` prepended.
[[noreturn]] void rethrow_with_prefix(const Error& e, const std::string& prefix);

}  // namespace hle
