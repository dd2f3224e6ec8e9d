#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qprop {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  NotAProjector,
  NotOrthogonal,
  Incomplete,
  TrivialMember,
  TooFewMembers,
  InvalidSpectralDecomposition,
  InvalidState,
  UnknownLabel,
  DuplicateLabel,
  NotAnElement,
  InvalidInput,
  HomeNotInContext,
  TooLarge,
  InvalidSplice,
  MissingContext,
  MissingEnvProp,
  DuplicateElements,
  UnknownName,
  SyntaxError,
  UnknownReference,
  ValidationFailed,
  Io,
};

std::string_view to_string(ErrorCode code);

/// One validation finding. Validators that can report several problems at
/// once (contexts, scenario checks) collect these instead of stopping early.
struct Issue {
  ErrorCode code;
  std::string detail;
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail);
  Error(ErrorCode code, const std::string& detail, std::vector<Issue> issues);

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Issue>& issues() const noexcept { return issues_; }
  bool has(ErrorCode code) const noexcept;

private:
  ErrorCode code_;
  std::vector<Issue> issues_;
};

}  // namespace qprop
