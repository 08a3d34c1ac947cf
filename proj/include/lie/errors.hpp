#pragma once

#include <stdexcept>
#include <string>

namespace lie {

// Base for all contract-level failures. `code()` is the stable machine-readable
// identifier surfaced by the CLI.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define LIE_DEFINE_ERROR(Name)                                     \
  class Name : public DomainError {                                \
   public:                                                         \
    explicit Name(const std::string& message)                      \
        : DomainError(#Name, message) {}                           \
  }

LIE_DEFINE_ERROR(UnsupportedRank);
LIE_DEFINE_ERROR(NonDominantWeight);
LIE_DEFINE_ERROR(LatticeMismatch);
LIE_DEFINE_ERROR(NegativeResidue);
LIE_DEFINE_ERROR(UnsupportedPair);
LIE_DEFINE_ERROR(UnknownPair);
LIE_DEFINE_ERROR(SingularRealization);
LIE_DEFINE_ERROR(StructureMismatch);
LIE_DEFINE_ERROR(NonGenericParameters);
LIE_DEFINE_ERROR(SearchBoundExceeded);
LIE_DEFINE_ERROR(IncompatibleCharacters);
LIE_DEFINE_ERROR(DimensionMismatch);
LIE_DEFINE_ERROR(UndefinedOnStratum);
LIE_DEFINE_ERROR(SingularMatrix);
LIE_DEFINE_ERROR(NotConvergent);
LIE_DEFINE_ERROR(UsageError);
LIE_DEFINE_ERROR(PreconditionViolated);

#undef LIE_DEFINE_ERROR

}  // namespace lie
