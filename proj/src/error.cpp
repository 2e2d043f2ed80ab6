#include "recmu/error.hpp"

namespace recmu {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kNamespaceClash: return "NamespaceClash";
    case ErrorCode::kMalformedSystem: return "MalformedSystem";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kNotAFunctionType: return "NotAFunctionType";
    case ErrorCode::kArgumentTypeMismatch: return "ArgumentTypeMismatch";
    case ErrorCode::kMuBodyNotBottom: return "MuBodyNotBottom";
    case ErrorCode::kNamedTermTypeMismatch: return "NamedTermTypeMismatch";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kNotGood: return "NotGood";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kNotARedex: return "NotARedex";
    case ErrorCode::kFuelExhausted: return "FuelExhausted";
    case ErrorCode::kUnsupportedType: return "UnsupportedType";
    case ErrorCode::kUntypable: return "Untypable";
    case ErrorCode::kTypePreservationFailure: return "TypePreservationFailure";
    case ErrorCode::kSimulationFailure: return "SimulationFailure";
    case ErrorCode::kSubjectReductionViolation: return "SubjectReductionViolation";
    case ErrorCode::kIndexFrozen: return "IndexFrozen";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kUsage: return "UsageError";
  }
  return "Unknown";
}

}  // namespace recmu
