#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace structura {

enum class ErrorCode {
  SizeExceeded,
  NotASubset,
  DomainMismatch,
  NotBijective,
  NotAFunction,
  CardinalityMismatch,
  ArityMismatch,
  NotAStructureOfType,
  ApplyUndefined,
  InvalidFormula,
  CaptureDetected,
  SyntaxError,
  ArityError,
  UnboundSymbol,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::NotASubset: return "NotASubset";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotAStructureOfType: return "NotAStructureOfType";
    case ErrorCode::ApplyUndefined: return "ApplyUndefined";
    case ErrorCode::InvalidFormula: return "InvalidFormula";
    case ErrorCode::CaptureDetected: return "CaptureDetected";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code is the contract; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Parse failure with a 1-based position. `expected` is never empty for
/// SyntaxError; it may be empty for the semantic codes (ArityError,
/// UnboundSymbol) which are also reported with a position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourcePosition pos, std::string detail,
             std::vector<std::string> expected = {})
      : Error(code, format(pos, detail, expected)),
        position_(pos),
        detail_(std::move(detail)),
        expected_(std::move(expected)) {}

  const SourcePosition& position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(SourcePosition pos, const std::string& detail,
                            const std::vector<std::string>& expected) {
    std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + detail;
    if (!expected.empty()) {
      out += "; expected one of:";
      for (const auto& e : expected) out += " " + e;
    }
    return out;
  }

  SourcePosition position_;
  std::string detail_;
  std::vector<std::string> expected_;
};

}  // namespace structura
