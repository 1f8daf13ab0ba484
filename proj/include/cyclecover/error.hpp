#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclecover {

enum class ErrorCode {
  OutOfRange,
  EmptyGraph,
  BadParams,
  InfeasibleFamily,
  BadSizes,
  BadK,
  NoAbsentColour,
  GenerationFailed,
  BudgetExceeded,
  PreconditionViolated,
  TooManyColours,
  NotTwoLocal,
  NotRLocal,
  StructureViolation,
  MeanTooHigh,
  ParseError,
  ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::InfeasibleFamily: return "InfeasibleFamily";
    case ErrorCode::BadSizes: return "BadSizes";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::NoAbsentColour: return "NoAbsentColour";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::TooManyColours: return "TooManyColours";
    case ErrorCode::NotTwoLocal: return "NotTwoLocal";
    case ErrorCode::NotRLocal: return "NotRLocal";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::MeanTooHigh: return "MeanTooHigh";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace cyclecover
