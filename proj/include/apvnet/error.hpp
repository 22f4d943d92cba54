#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apvnet {

enum class ErrorCode {
  EmptyText,
  KindMismatch,
  MalformedStandardVector,
  MalformedCsv,
  EmptySource,
  SplitTooLarge,
  BadArchitecture,
  DimensionMismatch,
  LengthMismatch,
  DegenerateStep,
  ShapeMismatch,
  EmptyTrainingSet,
  BadThreshold,
  BadLabel,
  BadConfig,
  MalformedModelFile,
  UnsupportedVersion,
  EmptyInput,
  EmptyMatrix,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::MalformedStandardVector: return "MalformedStandardVector";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::SplitTooLarge: return "SplitTooLarge";
    case ErrorCode::BadArchitecture: return "BadArchitecture";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateStep: return "DegenerateStep";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::BadThreshold: return "BadThreshold";
    case ErrorCode::BadLabel: return "BadLabel";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::MalformedModelFile: return "MalformedModelFile";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// Errors caused by the input data rather than by the program or its
// configuration. The CLI maps these to a distinct exit status.
constexpr bool is_data_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyText:
    case ErrorCode::MalformedStandardVector:
    case ErrorCode::MalformedCsv:
    case ErrorCode::EmptySource:
    case ErrorCode::MalformedModelFile:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::Io:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apvnet
