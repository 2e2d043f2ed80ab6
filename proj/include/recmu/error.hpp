#pragma once

#include <stdexcept>
#include <string>

namespace recmu {

enum class ErrorCode {
  kSyntax,
  kNamespaceClash,
  kMalformedSystem,
  kUnboundVariable,
  kNotAFunctionType,
  kArgumentTypeMismatch,
  kMuBodyNotBottom,
  kNamedTermTypeMismatch,
  kArityMismatch,
  kNotGood,
  kUnknownClass,
  kNotARedex,
  kFuelExhausted,
  kUnsupportedType,
  kUntypable,
  kTypePreservationFailure,
  kSimulationFailure,
  kSubjectReductionViolation,
  kIndexFrozen,
  kIo,
  kUsage,
};

/// Stable identifier used in JSON output and by the C API.
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error carrying a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(ErrorCode::kSyntax, std::to_string(line) + ":" + std::to_string(column) +
                                      ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace recmu
