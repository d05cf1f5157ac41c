#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace touchvis {

enum class ErrorCode {
  EmptyDomain,
  SpecError,
  ProtocolError,
  EmptySteps,
  InspectionUnavailable,
  NoTarget,
  FocusRequiresSelection,
  RemoveWouldEmptyView,
  AggregateRequiresSelection,
  AlreadyAggregated,
  NothingToUndo,
  NothingToRedo,
  UnknownCommand,
  ParseError,
  EmptyDataset,
  ConfigError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::SpecError: return "SpecError";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::EmptySteps: return "EmptySteps";
    case ErrorCode::InspectionUnavailable: return "InspectionUnavailable";
    case ErrorCode::NoTarget: return "NoTarget";
    case ErrorCode::FocusRequiresSelection: return "FocusRequiresSelection";
    case ErrorCode::RemoveWouldEmptyView: return "RemoveWouldEmptyView";
    case ErrorCode::AggregateRequiresSelection: return "AggregateRequiresSelection";
    case ErrorCode::AlreadyAggregated: return "AlreadyAggregated";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::NothingToRedo: return "NothingToRedo";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code; the
/// engine turns these into `error` view updates without touching its state.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace touchvis
