#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdalang {

enum class ErrorCode {
  InvalidDocument,
  DuplicateEvent,
  UnknownEvent,
  PrecedenceCyclic,
  NotIntervalOrder,
  EventOrderIncomplete,
  EventOrderCyclic,
  InterfaceNotExtremal,
  InterfaceMismatch,
  NotInTargetInterface,
  BoundTooLarge,
  MissingFace,
  FaceTypeMismatch,
  PrecubicalViolation,
  InvalidPath,
  LabelMismatch,
  SourceNotEmpty,
  NotCoherent,
  ActionUndefined,
  SyntaxError,
  UnknownName,
  UnknownDocumentKind,
  CorpusMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::DuplicateEvent: return "DuplicateEvent";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::PrecedenceCyclic: return "PrecedenceCyclic";
    case ErrorCode::NotIntervalOrder: return "NotIntervalOrder";
    case ErrorCode::EventOrderIncomplete: return "EventOrderIncomplete";
    case ErrorCode::EventOrderCyclic: return "EventOrderCyclic";
    case ErrorCode::InterfaceNotExtremal: return "InterfaceNotExtremal";
    case ErrorCode::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorCode::NotInTargetInterface: return "NotInTargetInterface";
    case ErrorCode::BoundTooLarge: return "BoundTooLarge";
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::FaceTypeMismatch: return "FaceTypeMismatch";
    case ErrorCode::PrecubicalViolation: return "PrecubicalViolation";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::SourceNotEmpty: return "SourceNotEmpty";
    case ErrorCode::NotCoherent: return "NotCoherent";
    case ErrorCode::ActionUndefined: return "ActionUndefined";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::UnknownDocumentKind: return "UnknownDocumentKind";
    case ErrorCode::CorpusMismatch: return "CorpusMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library. The message carries the witness
/// (offending events, cells, positions) in human-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hdalang
