#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tnnfibers {

enum class ErrorCode {
  BadInput,
  GroupTooLarge,
  NotADescent,
  NotSameElement,
  NotReduced,
  NotContained,
  TooLarge,
  DimensionMismatch,
  NotInCell,
  NotTNN,
  PatternMismatch,
  BraidDegenerate,
  CellMismatch,
  ValidationFailed,
  PreconditionFailed,
  NotInFiber,
  MaximalValueEncountered,
  MaximalOrExcessive,
  NoPartner,
  WitnessFailed,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotADescent: return "NotADescent";
    case ErrorCode::NotSameElement: return "NotSameElement";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInCell: return "NotInCell";
    case ErrorCode::NotTNN: return "NotTNN";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::BraidDegenerate: return "BraidDegenerate";
    case ErrorCode::CellMismatch: return "CellMismatch";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotInFiber: return "NotInFiber";
    case ErrorCode::MaximalValueEncountered: return "MaximalValueEncountered";
    case ErrorCode::MaximalOrExcessive: return "MaximalOrExcessive";
    case ErrorCode::NoPartner: return "NoPartner";
    case ErrorCode::WitnessFailed: return "WitnessFailed";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
/// Verification-type codes (ValidationFailed, WitnessFailed) indicate that a
/// computed object failed an exact consistency check; they are never
/// swallowed internally.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for codes that signal a failed consistency check rather than bad input.
  bool is_verification_failure() const noexcept {
    return code_ == ErrorCode::ValidationFailed || code_ == ErrorCode::WitnessFailed;
  }

 private:
  ErrorCode code_;
};

}  // namespace tnnfibers
