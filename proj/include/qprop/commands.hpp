#pragma once

// The command implementations behind the qprop executable. Each returns the
// text to print and the process exit code; the executable only parses flags.

#include <optional>
#include <string>

#include <json.hpp>

#include "qprop/composition.hpp"
#include "qprop/diagram.hpp"

namespace qprop {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

struct CommandResult {
  std::string output;
  int exit_code = kExitOk;
  /// Diagnostic for stderr when exit_code != 0.
  std::string error;
};

/// Tolerance for a run: the flag if given, else QPROP_EPS if set and
/// parsable, else the default. A scenario's own "eps" field overrides both.
double resolve_eps(std::optional<double> flag, const char* env_value);

/// Exit code for an error: 2 for Io, 1 otherwise.
int exit_code_for(const Error& e);

CommandResult cmd_eval(const std::string& scenario_path, bool json, double eps);
CommandResult cmd_demo(const std::string& name, double eps);
/// Writes DOT to out_path, or returns it as output when out_path is empty.
CommandResult cmd_diagram(const std::string& scenario_path, const std::string& out_path,
                          const DotOptions& options, double eps);
CommandResult cmd_check(const std::string& scenario_path, bool json, double eps);

/// Machine-readable forms shared by the commands.
nlohmann::ordered_json eval_report(const Scenario& scenario, double eps);
nlohmann::ordered_json bivalence_json(const BivalenceReport& report);

/// Annotated graphs for the scenario's evaluation collection and state.
std::vector<HasseGraph> scenario_graphs(const Scenario& scenario, double eps);

}  // namespace qprop
