#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qprop/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qprop: three-valued valuation of quantum propositions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> eps_flag;
  app.add_option("--eps", eps_flag, "tolerance for subspace tests (default 1e-9, or QPROP_EPS)")
      ->check(CLI::PositiveNumber);

  bool json = false;
  std::string scenario_path;
  std::string out_path;
  std::string demo_name;
  qprop::DotOptions dot;

  auto* eval = app.add_subcommand("eval", "evaluate the scenario's propositions in its state");
  eval->add_option("scenario", scenario_path, "scenario JSON file")->required();
  eval->add_flag("--json", json, "print a JSON report");

  auto* demo = app.add_subcommand("demo", "run a built-in scenario");
  demo->add_option("name", demo_name, "intro, environment or classical-limit")
      ->required()
      ->check(CLI::IsMember({"intro", "environment", "classical-limit"}));

  auto* diagram = app.add_subcommand("diagram", "emit annotated Hasse diagrams as DOT");
  diagram->add_option("scenario", scenario_path, "scenario JSON file")->required();
  diagram->add_option("--out", out_path, "output file (default: standard output)");
  diagram->add_flag("--cluster-blocks", dot.cluster_blocks, "group vertices by block");
  diagram->add_flag("--include-trivials{true},!--exclude-trivials{false}", dot.include_trivials,
                    "keep {0} and H (--include-trivials=false drops them)")
      ->default_val(true);
  diagram->add_flag("--dimension-labels", dot.dimension_labels, "label vertices by dimension");

  auto* check = app.add_subcommand("check", "validate a scenario without evaluating it");
  check->add_option("scenario", scenario_path, "scenario JSON file")->required();
  check->add_flag("--json", json, "print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? qprop::kExitOk : qprop::kExitValidation;
  }

  const double eps = qprop::resolve_eps(eps_flag, std::getenv("QPROP_EPS"));
  qprop::CommandResult result;
  if (*eval) {
    result = qprop::cmd_eval(scenario_path, json, eps);
  } else if (*demo) {
    result = qprop::cmd_demo(demo_name, eps);
  } else if (*diagram) {
    result = qprop::cmd_diagram(scenario_path, out_path, dot, eps);
  } else {
    result = qprop::cmd_check(scenario_path, json, eps);
  }
  std::cout << result.output;
  if (!result.error.empty()) std::cerr << "qprop: " << result.error << "\n";
  return result.exit_code;
}
