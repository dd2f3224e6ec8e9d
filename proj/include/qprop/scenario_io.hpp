#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qprop/scenario.hpp"

namespace qprop {

/// Parses and validates a scenario. The first problem is thrown as
/// SyntaxError (with line and column), UnknownReference, or ValidationFailed
/// (with the JSON path of the offending object and the wrapped module error
/// as its first issue). `fallback_eps` applies unless the file sets "eps".
Scenario parse_scenario(const std::string& text, double fallback_eps = kDefaultEps);

/// Normalized form: states as complex pairs, homes and propositions as
/// orthonormal spans, context members as projector matrices.
nlohmann::ordered_json scenario_to_json(const Scenario& scenario);
std::string serialize_scenario(const Scenario& scenario);

struct CheckEntry {
  std::string object;  // e.g. "context Sigma_z"
  bool ok = true;
  std::string code;    // ErrorCode name when !ok
  std::string message;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool all_ok() const;
};

/// Validates every object independently, continuing past failures. Syntax
/// errors produce a single failing "document" entry.
CheckReport check_scenario(const std::string& text, double fallback_eps = kDefaultEps);

/// Reads a file; throws Error(Io) if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace qprop
