#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gatc {

enum class ErrorCode {
  UnknownSymbol,
  ArityMismatch,
  ScopeError,
  NotAType,
  NotATerm,
  NotAFunction,
  ArgumentTypeMismatch,
  InconclusiveEquality,
  RuleDisabled,
  DuplicateName,
  ForwardReference,
  VariableClash,
  NotASubtheory,
  InvalidInterpretation,
  Budget,
  Syntax,
  Usage,
};

inline std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ScopeError: return "ScopeError";
    case ErrorCode::NotAType: return "NotAType";
    case ErrorCode::NotATerm: return "NotATerm";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::ArgumentTypeMismatch: return "ArgumentTypeMismatch";
    case ErrorCode::InconclusiveEquality: return "InconclusiveEquality";
    case ErrorCode::RuleDisabled: return "RuleDisabled";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::ForwardReference: return "ForwardReference";
    case ErrorCode::VariableClash: return "VariableClash";
    case ErrorCode::NotASubtheory: return "NotASubtheory";
    case ErrorCode::InvalidInterpretation: return "InvalidInterpretation";
    case ErrorCode::Budget: return "Budget";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

/// Every failure raised by the kernel. `where` names the offending
/// declaration or symbol when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string where = {})
      : std::runtime_error(std::move(message)), code_(code), where_(std::move(where)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

  /// Fuel exhaustion is reported apart from genuine failures.
  bool inconclusive() const noexcept { return code_ == ErrorCode::InconclusiveEquality; }

  Error located(std::string where) const {
    if (!where_.empty()) return *this;
    return Error(code_, what(), std::move(where));
  }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace gatc
