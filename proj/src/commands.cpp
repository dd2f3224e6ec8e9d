#include "qprop/commands.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "qprop/builtin.hpp"
#include "qprop/scenario_io.hpp"

namespace qprop {

using ojson = nlohmann::ordered_json;

double resolve_eps(std::optional<double> flag, const char* env_value) {
  if (flag && std::isfinite(*flag) && *flag > 0.0) return *flag;
  if (env_value != nullptr) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env_value, &used);
      if (used > 0 && std::isfinite(v) && v > 0.0) return v;
    } catch (const std::exception&) {
      // unparsable: fall through to the default
    }
  }
  return kDefaultEps;
}

int exit_code_for(const Error& e) { return e.code() == ErrorCode::Io ? kExitIo : kExitValidation; }

namespace {

CommandResult guarded(const std::function<CommandResult()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return {"", exit_code_for(e), e.what()};
  } catch (const std::exception& e) {
    return {"", kExitValidation, e.what()};
  }
}

// Display width of UTF-8 text: one column per code point.
std::size_t width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string pad(const std::string& s, std::size_t w) {
  const std::size_t n = width(s);
  return n >= w ? s + " " : s + std::string(w - n, ' ');
}

std::string format_eps(double eps) {
  std::ostringstream os;
  os << std::setprecision(3) << eps;
  return os.str();
}

ojson value_json(const std::string& name, TruthValue v) {
  ojson j;
  j["proposition"] = name;
  if (v == TruthValue::Gap) {
    j["value"] = nullptr;
  } else {
    j["value"] = v == TruthValue::True;
  }
  j["status"] = std::string(status_name(v));
  j["rendered"] = std::string(render(v));
  return j;
}

std::string describe(const Subspace& s, std::span<const Proposition> named, double tol) {
  const Subspace one[] = {s};
  return vertex_labels(one, named, tol).front() + " (dim " + std::to_string(s.dim()) + ")";
}

std::string status_text(const ojson& v) { return v["rendered"].get<std::string>(); }

std::size_t name_width(const ojson& rows, std::size_t minimum) {
  std::size_t w = minimum;
  for (const auto& r : rows) w = std::max(w, width(r["proposition"].get<std::string>()));
  return w + 2;
}

std::string eval_text(const ojson& report) {
  std::ostringstream os;
  os << "state " << report["state"].get<std::string>() << " (home dimension " << report["home_dim"].get<Index>()
     << ")\n";
  os << "collection:";
  for (const auto& l : report["collection"]) os << " " << l.get<std::string>();
  os << "\ntolerance: " << format_eps(report["tolerance"].get<double>()) << "\n\n";

  const std::size_t w = std::max(name_width(report["valuations"], 11), name_width(report["disjunctions"], 11));
  os << pad("proposition", w) << "value\n";
  for (const auto& v : report["valuations"]) {
    os << pad(v["proposition"].get<std::string>(), w) << status_text(v) << "\n";
  }
  if (!report["disjunctions"].empty()) {
    os << "\ndisjunctions with negation\n";
    for (const auto& v : report["disjunctions"]) {
      os << pad(v["proposition"].get<std::string>(), w) << status_text(v) << "\n";
    }
  }
  const ojson& profile = report["context_profile"];
  if (!profile.is_null()) {
    os << "\ncontext " << profile["context"].get<std::string>() << " profile";
    if (profile["applicable"].get<bool>()) {
      os << "\n";
      for (const auto& v : profile["members"]) {
        os << pad(v["proposition"].get<std::string>(), w) << status_text(v) << "\n";
      }
    } else {
      os << ": not applicable (" << profile["reason"].get<std::string>() << ")\n";
    }
  }
  const ojson& b = report["bivalence"];
  if (!b.is_null()) {
    os << "\nbivalence of " << b["proposition"].get<std::string>() << "\n";
    os << "  before coupling         " << b["pre_status"].get<std::string>() << "\n";
    os << "  companion " << pad(b["companion_env_prop"].get<std::string>(), 14)
       << b["companion_status"].get<std::string>() << "\n";
    os << "  conjunction " << pad(b["conjunction"].get<std::string>(), 12)
       << b["conjunction_status"].get<std::string>() << "\n";
    const std::string witness = b["witness_lattice"].is_null() ? "none" : b["witness_lattice"].get<std::string>();
    os << "  witness lattice         " << witness << "\n";
    os << "  post status             " << b["post_status"].get<std::string>() << " (route "
       << b["route"].get<std::string>() << ")\n";
  }
  return os.str();
}

Scenario load(const std::string& path, double eps) {
  Scenario sc = parse_scenario(read_text_file(path), eps);
  if (!sc.eps) sc.eps = eps;
  return sc;
}

std::vector<std::string> collection_labels(const Scenario& sc) {
  if (!sc.evaluation.collection.empty()) return sc.evaluation.collection;
  std::vector<std::string> labels;
  for (const auto& c : sc.contexts) labels.push_back(c.label());
  return labels;
}

}  // namespace

ojson bivalence_json(const BivalenceReport& r) {
  ojson j;
  j["proposition"] = r.proposition;
  j["pre_value"] = value_json(r.proposition, r.pre_value)["value"];
  j["pre_status"] = std::string(status_name(r.pre_value));
  if (r.witness_lattice.empty()) {
    j["witness_lattice"] = nullptr;
  } else {
    j["witness_lattice"] = r.witness_lattice;
  }
  j["companion_env_prop"] = r.companion_env_prop;
  j["companion_value"] = value_json(r.companion_env_prop, r.companion_value)["value"];
  j["companion_status"] = std::string(status_name(r.companion_value));
  j["conjunction"] = r.conjunction;
  j["conjunction_value"] = value_json(r.conjunction, r.conjunction_value)["value"];
  j["conjunction_status"] = std::string(status_name(r.conjunction_value));
  j["post_status"] = std::string(to_string(r.post_status));
  j["route"] = std::string(to_string(r.route));
  return j;
}

ojson eval_report(const Scenario& sc, double eps) {
  const double tol = effective_tol(sc.eps.value_or(eps));
  if (sc.evaluation.state.empty()) throw Error(ErrorCode::InvalidInput, "scenario declares no state to evaluate");
  const ValuationInput input = sc.valuation_input(sc.evaluation.state, sc.evaluation.collection, tol);

  ojson report;
  report["report"] = "eval";
  report["schema_version"] = kScenarioSchemaVersion;
  report["state"] = sc.evaluation.state;
  report["home_dim"] = input.home().dim();
  report["tolerance"] = tol;
  report["collection"] = collection_labels(sc);

  ojson valuations = ojson::array();
  ojson disjunctions = ojson::array();
  for (const auto& p : sc.evaluation_propositions()) {
    const TruthValue v = evaluate(input, p);
    valuations.push_back(value_json(p.name, v));
    if (v == TruthValue::Gap) {
      disjunctions.push_back(value_json(p.name + " ∨ " + negation_of(p).name,
                                        evaluate_disjunction_with_negation(input, p)));
    }
  }
  report["valuations"] = valuations;
  report["disjunctions"] = disjunctions;

  if (sc.evaluation.context) {
    const Context& ctx = sc.context(*sc.evaluation.context);
    ojson profile;
    profile["context"] = ctx.label();
    try {
      const auto values = context_valuation_profile(input, ctx);
      profile["applicable"] = true;
      ojson members = ojson::array();
      for (std::size_t i = 0; i < ctx.size(); ++i) members.push_back(value_json(ctx.member_names()[i], values[i]));
      profile["members"] = members;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HomeNotInContext) throw;
      profile["applicable"] = false;
      profile["reason"] = "home is not a member of the context";
    }
    report["context_profile"] = profile;
  } else {
    report["context_profile"] = nullptr;
  }

  if (sc.environment) {
    Scenario copy = sc;
    copy.eps = tol;
    report["bivalence"] = bivalence_json(induced_bivalence(copy, sc.environment->q, sc.environment->env_prop));
  } else {
    report["bivalence"] = nullptr;
  }
  return report;
}

std::vector<HasseGraph> scenario_graphs(const Scenario& sc, double eps) {
  const double tol = effective_tol(sc.eps.value_or(eps));
  const auto labels = collection_labels(sc);
  std::optional<ValuationInput> input;
  if (!sc.evaluation.state.empty()) input.emplace(sc.valuation_input(sc.evaluation.state, labels, tol));
  std::vector<HasseGraph> graphs;
  for (const auto& label : labels) {
    HasseGraph g = lattice_graph(lattice_of(sc.context(label)), sc.propositions, tol);
    graphs.push_back(input ? annotate_in(std::move(g), *input) : std::move(g));
  }
  return graphs;
}

CommandResult cmd_eval(const std::string& scenario_path, bool json, double eps) {
  return guarded([&] {
    const Scenario sc = load(scenario_path, eps);
    const ojson report = eval_report(sc, eps);
    return CommandResult{json ? report.dump(2) + "\n" : eval_text(report), kExitOk, ""};
  });
}

CommandResult cmd_diagram(const std::string& scenario_path, const std::string& out_path,
                          const DotOptions& options, double eps) {
  return guarded([&] {
    const Scenario sc = load(scenario_path, eps);
    const std::string dot = emit_dot(scenario_graphs(sc, eps), options);
    if (out_path.empty()) return CommandResult{dot, kExitOk, ""};
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + out_path + "'");
    out << dot;
    if (!out) throw Error(ErrorCode::Io, "write to '" + out_path + "' failed");
    return CommandResult{"wrote " + out_path + "\n", kExitOk, ""};
  });
}

CommandResult cmd_check(const std::string& scenario_path, bool json, double eps) {
  return guarded([&] {
    const CheckReport report = check_scenario(read_text_file(scenario_path), eps);
    const int code = report.all_ok() ? kExitOk : kExitValidation;
    if (json) {
      ojson j;
      j["report"] = "check";
      j["schema_version"] = kScenarioSchemaVersion;
      j["ok"] = report.all_ok();
      ojson entries = ojson::array();
      for (const auto& e : report.entries) {
        ojson je{{"object", e.object}, {"ok", e.ok}};
        if (e.ok) {
          je["code"] = nullptr;
        } else {
          je["code"] = e.code;
        }
        je["message"] = e.message;
        entries.push_back(je);
      }
      j["entries"] = entries;
      return CommandResult{j.dump(2) + "\n", code, ""};
    }
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto& e : report.entries) {
      if (e.ok) {
        os << "[ok]   " << e.object << "\n";
      } else {
        ++failed;
        os << "[FAIL] " << e.object << ": " << e.message << "\n";
      }
    }
    os << (report.entries.size() - failed) << " passed, " << failed << " failed\n";
    return CommandResult{os.str(), code, ""};
  });
}

// ---------------------------------------------------------------------------
// Demos

namespace {

std::string demo_intro(double eps) {
  Scenario sc = intro_scenario();
  sc.eps = eps;
  const double tol = effective_tol(eps);
  std::ostringstream os;
  os << "demo: intro\n";
  os << "one qubit in state |z+>, blocks L(Sigma_z) and L(Sigma_x)\n\n";
  os << eval_text(eval_report(sc, eps));

  const Subspace& a = sc.proposition("P_z+").subspace;
  const Subspace& b = sc.proposition("P_x+").subspace;
  const Subspace& c = sc.proposition("P_x-").subspace;
  const HilbertSublattice pasted = paste_sublattice(sc.collection({}), tol);
  const DistributivityReport d = check_distributivity(pasted, a, b, c, tol);
  const ValuationInput input = sc.valuation_input("Psi", {}, tol);

  os << "\ndistributive law with a = P_z+, b = P_x+, c = P_x-\n";
  os << "  a ∧ (b ∨ c)        = " << describe(d.lhs, sc.propositions, tol) << ", value "
     << render(evaluate(input, {"lhs", d.lhs})) << "\n";
  os << "  (a ∧ b) ∨ (a ∧ c)  = " << describe(d.rhs, sc.propositions, tol) << ", value "
     << render(evaluate(input, {"rhs", d.rhs})) << "\n";
  os << "  equal: " << (d.equal ? "yes" : "no") << "\n";
  return os.str();
}

std::string demo_environment(double eps) {
  Scenario sc = environment_scenario();
  sc.eps = eps;
  const double tol = effective_tol(eps);
  const EnvironmentSpec& env = *sc.environment;
  std::ostringstream os;
  os << "demo: environment\n";
  os << "system qubit coupled to " << env.n_env << " environment qubit(s), preferred basis "
     << axis_char(env.axis) << "\n\n";

  const Context& sigma_a = sc.context(env.composite_context);
  os << "context " << sigma_a.label() << ": valid, members";
  for (const auto& n : sigma_a.member_names()) os << " " << n;
  os << "\n";

  const Proposition& home = sc.proposition(sigma_a.member_names()[0]);
  const Proposition& other = sc.proposition(sigma_a.member_names()[2]);
  os << "meet of " << home.name << " and " << other.name << " = "
     << describe(meet(home.subspace, other.subspace, tol), {}, tol) << "\n\n";

  os << eval_text(eval_report(sc, eps));

  const std::array system{spin_context(Axis::Z, "S"), spin_context(Axis::X, "S")};
  const Scenario rotated = build_environment_scenario(env.n_env, env.splice_index, system, Axis::X);
  const Context& x_splice = rotated.context("Sigma_A");
  std::vector<Context> candidates = sc.contexts;
  candidates.push_back(Context::create("Sigma_A[x]", x_splice.projectors(), x_splice.member_names(), tol));
  const StabilityVerdict verdict = stability_filter(CompositeSpace(sc.factors), env.axis, candidates, tol);
  os << "\nstability under the " << axis_char(env.axis) << " preferred basis\n";
  for (const auto& c : verdict.retained) os << "  retained " << c.label() << "\n";
  for (const auto& [label, reason] : verdict.rejected) os << "  rejected " << label << ": " << reason << "\n";
  return os.str();
}

std::string demo_classical_limit(double eps) {
  Scenario sc = classical_limit_scenario();
  sc.eps = eps;
  const double tol = effective_tol(eps);
  std::ostringstream os;
  os << "demo: classical-limit\n";
  os << "one qubit in state |z+>, blocks L(Sigma_z), L(Sigma_x), L(Sigma_y)\n\n";

  os << "separate blocks\n";
  os << eval_text(eval_report(sc, eps));

  const HilbertSublattice pasted = paste_sublattice(sc.collection({}), tol);
  const NamedState& psi = sc.state("Psi");
  const Subspace home = sc.home_of(psi);
  os << "\npasted sublattice K(C^2), " << pasted.elements.size() << " elements\n";
  for (const auto& p : sc.propositions) {
    os << "  " << pad(p.name, 8) << render(evaluate_in_sublattice(psi.state, home, pasted, p, tol)) << "\n";
  }

  const auto labels = vertex_labels(pasted.elements, sc.propositions, tol);
  std::size_t w = 0;
  for (const auto& l : labels) w = std::max(w, width(l));
  w += 2;
  os << "\ncommutativity of K(C^2) elements (1 = commute)\n";
  os << "  " << std::string(w, ' ');
  for (const auto& l : labels) os << pad(l, w);
  os << "\n";
  for (std::size_t i = 0; i < pasted.elements.size(); ++i) {
    os << "  " << pad(labels[i], w);
    for (std::size_t j = 0; j < pasted.elements.size(); ++j) {
      os << pad(subspaces_commute(pasted.elements[i], pasted.elements[j], tol) ? "1" : "0", w);
    }
    os << "\n";
  }

  auto spectrum = [](Axis a) {
    return std::vector<SpectralTerm>{{1.0, spin_projector(a, true)}, {-1.0, spin_projector(a, false)}};
  };
  const auto sz = spectrum(Axis::Z);
  const auto sx = spectrum(Axis::X);
  const ComplexMatrix via_spectra = observable_commutator(sz, sx, tol);
  const ComplexMatrix direct = commutator(assemble_observable(sz), assemble_observable(sx));
  os << "\nobservable commutator [sigma_z, sigma_x]\n";
  os << "  frobenius norm " << std::fixed << std::setprecision(6) << via_spectra.norm() << "\n";
  os << "  agrees with the direct commutator to 1e-12: " << ((via_spectra - direct).norm() <= 1e-12 ? "yes" : "no")
     << "\n";
  const ComplexMatrix self = observable_commutator(sz, sz, tol);
  os << "  [sigma_z, sigma_z] vanishes: " << (self.norm() <= 1e-12 ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace

CommandResult cmd_demo(const std::string& name, double eps) {
  return guarded([&] {
    if (name == "intro") return CommandResult{demo_intro(eps), kExitOk, ""};
    if (name == "environment") return CommandResult{demo_environment(eps), kExitOk, ""};
    if (name == "classical-limit") return CommandResult{demo_classical_limit(eps), kExitOk, ""};
    throw Error(ErrorCode::UnknownName, "unknown demo '" + name + "' (expected intro, environment or classical-limit)");
  });
}

}  // namespace qprop
