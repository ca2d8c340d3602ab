#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace awarekit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the formula parser. `offset` is the byte offset of the offending token.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset), reason_(msg) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t offset_;
  std::string reason_;
};

enum class ErrorCode {
  UnknownSpace,
  UnknownState,
  UnknownAtom,
  UnknownAgent,
  NotComparable,
  UndefinedFormula,
  ConfinementError,
  PreconditionFailed,
  CandidateInvalid,
  DerivationInconsistent,
  TransformInvariantBroken,
  InvalidCaps,
  InvalidInput,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
  case ErrorCode::UnknownSpace: return "UnknownSpace";
  case ErrorCode::UnknownState: return "UnknownState";
  case ErrorCode::UnknownAtom: return "UnknownAtom";
  case ErrorCode::UnknownAgent: return "UnknownAgent";
  case ErrorCode::NotComparable: return "NotComparable";
  case ErrorCode::UndefinedFormula: return "UndefinedFormula";
  case ErrorCode::ConfinementError: return "ConfinementError";
  case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  case ErrorCode::CandidateInvalid: return "CandidateInvalid";
  case ErrorCode::DerivationInconsistent: return "DerivationInconsistent";
  case ErrorCode::TransformInvariantBroken: return "TransformInvariantBroken";
  case ErrorCode::InvalidCaps: return "InvalidCaps";
  case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class ModelError : public Error {
public:
  ModelError(ErrorCode code, const std::string& msg)
      : Error(std::string(to_string(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace awarekit
