#include "qprop/error.hpp"

#include <algorithm>

namespace qprop {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotAProjector: return "NotAProjector";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::Incomplete: return "Incomplete";
    case ErrorCode::TrivialMember: return "TrivialMember";
    case ErrorCode::TooFewMembers: return "TooFewMembers";
    case ErrorCode::InvalidSpectralDecomposition: return "InvalidSpectralDecomposition";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NotAnElement: return "NotAnElement";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::HomeNotInContext: return "HomeNotInContext";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidSplice: return "InvalidSplice";
    case ErrorCode::MissingContext: return "MissingContext";
    case ErrorCode::MissingEnvProp: return "MissingEnvProp";
    case ErrorCode::DuplicateElements: return "DuplicateElements";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail) {
  std::string msg(to_string(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(format_message(code, detail)), code_(code) {}

Error::Error(ErrorCode code, const std::string& detail, std::vector<Issue> issues)
    : std::runtime_error(format_message(code, detail)), code_(code), issues_(std::move(issues)) {}

bool Error::has(ErrorCode code) const noexcept {
  if (code_ == code) return true;
  return std::any_of(issues_.begin(), issues_.end(),
                     [code](const Issue& i) { return i.code == code; });
}

}  // namespace qprop
