#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nugrass {

enum class ErrorCode {
  ZeroInverse,
  PoleAtPoint,
  ContextMismatch,
  NotInvertible,
  ParityError,
  ShapeMismatch,
  NuOneSum,
  Singular,
  InverseCheckFailed,
  IndexOutOfRange,
  BadIndex,
  BadSpace,
  EmptyOverlap,
  NonInvertibleDenominator,
  MixedParityEntry,
  SingularMinor,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NuOneSum: return "NuOneSum";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InverseCheckFailed: return "InverseCheckFailed";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadSpace: return "BadSpace";
    case ErrorCode::EmptyOverlap: return "EmptyOverlap";
    case ErrorCode::NonInvertibleDenominator: return "NonInvertibleDenominator";
    case ErrorCode::MixedParityEntry: return "MixedParityEntry";
    case ErrorCode::SingularMinor: return "SingularMinor";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace nugrass
