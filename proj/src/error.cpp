#include "gainthresh/error.h"

namespace gainthresh {

std::string_view to_string(ErrorKind kind)
{
   switch (kind) {
      case ErrorKind::RowSumError: return "RowSumError";
      case ErrorKind::NegativeProbability: return "NegativeProbability";
      case ErrorKind::EmptyActionSet: return "EmptyActionSet";
      case ErrorKind::DuplicateLabel: return "DuplicateLabel";
      case ErrorKind::DimensionMismatch: return "DimensionMismatch";
      case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
      case ErrorKind::InvalidPolicy: return "InvalidPolicy";
      case ErrorKind::SingularSystem: return "SingularSystem";
      case ErrorKind::NotUnichain: return "NotUnichain";
      case ErrorKind::NotErgodic: return "NotErgodic";
      case ErrorKind::IterationLimitExceeded: return "IterationLimitExceeded";
      case ErrorKind::NoUniformBiasOptimal: return "NoUniformBiasOptimal";
      case ErrorKind::NoSuboptimalPolicy: return "NoSuboptimalPolicy";
      case ErrorKind::LemmaViolation: return "LemmaViolation";
      case ErrorKind::DomainError: return "DomainError";
      case ErrorKind::ParseError: return "ParseError";
   }
   return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

bool is_assertion_failure(ErrorKind kind)
{
   return kind == ErrorKind::LemmaViolation || kind == ErrorKind::NoUniformBiasOptimal
          || kind == ErrorKind::SingularSystem;
}

}  // namespace gainthresh
