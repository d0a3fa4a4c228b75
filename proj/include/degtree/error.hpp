#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace degtree {

enum class ErrorCode {
  NoIntersection,
  OverlapNotPoint,
  InvalidPolygon,
  InvalidChord,
  InvalidInstance,
  TooFewVertices,
  TooLarge,
  ExtensionStuck,
  SimplifyInvalid,
  VisibilityMismatch,
  RetryExhausted,
  InvalidInput,
  GenerationFailed,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::OverlapNotPoint: return "OverlapNotPoint";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::InvalidChord: return "InvalidChord";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ExtensionStuck: return "ExtensionStuck";
    case ErrorCode::SimplifyInvalid: return "SimplifyInvalid";
    case ErrorCode::VisibilityMismatch: return "VisibilityMismatch";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported with this exception; `code()`
/// lets callers (the epsilon retry loop, the CLI exit-code mapping) branch
/// on the kind of failure without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace degtree
