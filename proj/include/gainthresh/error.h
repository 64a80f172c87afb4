#ifndef GAINTHRESH_ERROR_H
#define GAINTHRESH_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace gainthresh {

enum class ErrorKind {
   RowSumError,
   NegativeProbability,
   EmptyActionSet,
   DuplicateLabel,
   DimensionMismatch,
   EnumerationCapExceeded,
   InvalidPolicy,
   SingularSystem,
   NotUnichain,
   NotErgodic,
   IterationLimitExceeded,
   NoUniformBiasOptimal,
   NoSuboptimalPolicy,
   LemmaViolation,
   DomainError,
   ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` identifies the failure class;
/// `what()` carries a human-readable message naming the offending labels.
class Error : public std::runtime_error {
 public:
   Error(ErrorKind kind, const std::string& message);

   ErrorKind kind() const noexcept { return kind_; }

 private:
   ErrorKind kind_;
};

/// True for failures that indicate an invariant broke inside the library
/// rather than a problem with the caller's input.
bool is_assertion_failure(ErrorKind kind);

}  // namespace gainthresh

#endif  // GAINTHRESH_ERROR_H
