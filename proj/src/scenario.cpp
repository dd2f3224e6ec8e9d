#include "qprop/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "qprop/composition.hpp"
#include "qprop/scenario_io.hpp"

namespace qprop {

// ---------------------------------------------------------------------------
// Scenario lookups

const NamedState& Scenario::state(const std::string& name) const {
  for (const auto& s : states) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::UnknownReference, "unknown state '" + name + "'");
}

const Context& Scenario::context(const std::string& label) const {
  for (const auto& c : contexts) {
    if (c.label() == label) return c;
  }
  throw Error(ErrorCode::UnknownReference, "unknown context '" + label + "'");
}

const Proposition& Scenario::proposition(const std::string& name) const {
  for (const auto& p : propositions) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::UnknownReference, "unknown proposition '" + name + "'");
}

bool Scenario::has_context(const std::string& label) const {
  return std::any_of(contexts.begin(), contexts.end(), [&](const Context& c) { return c.label() == label; });
}

bool Scenario::has_proposition(const std::string& name) const {
  return std::any_of(propositions.begin(), propositions.end(),
                     [&](const Proposition& p) { return p.name == name; });
}

Subspace Scenario::home_of(const NamedState& s) const { return s.home ? *s.home : span_of(s.state); }

LatticeCollection Scenario::collection(const std::vector<std::string>& labels) const {
  LatticeCollection coll;
  if (labels.empty()) {
    for (const auto& c : contexts) coll.add(lattice_of(c));
  } else {
    for (const auto& l : labels) coll.add(lattice_of(context(l)));
  }
  return coll;
}

ValuationInput Scenario::valuation_input(const std::string& state_name,
                                         const std::vector<std::string>& labels, double tol) const {
  const NamedState& s = state(state_name);
  return ValuationInput(s.state, home_of(s), collection(labels), tol);
}

std::vector<Proposition> Scenario::evaluation_propositions() const {
  if (evaluation.propositions.empty()) return propositions;
  std::vector<Proposition> out;
  for (const auto& name : evaluation.propositions) out.push_back(proposition(name));
  return out;
}

// ---------------------------------------------------------------------------
// JSON parsing

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void shape_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

bool is_passthrough(ErrorCode c) {
  return c == ErrorCode::SyntaxError || c == ErrorCode::UnknownReference || c == ErrorCode::ValidationFailed;
}

// Runs f, re-throwing module errors as ValidationFailed tagged with path.
template <typename F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (is_passthrough(e.code())) throw;
    std::vector<Issue> issues{{e.code(), e.what()}};
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    throw Error(ErrorCode::ValidationFailed, "at " + path + ": " + e.what(), std::move(issues));
  }
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) shape_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) shape_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) shape_error(path, "expected a string");
  return j.get<std::string>();
}

Index get_positive(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) shape_error(path, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

std::vector<std::string> get_string_list(const json& j, const std::string& path) {
  if (!j.is_array()) shape_error(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "/" + std::to_string(i)));
  return out;
}

Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  shape_error(path, "expected a number or an [re, im] pair");
}

ComplexVector parse_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) shape_error(path, "expected a nonempty array of complex numbers");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = parse_complex(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

ComplexMatrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) shape_error(path, "expected a nonempty array of rows");
  const auto rows = static_cast<Index>(j.size());
  ComplexMatrix m;
  for (Index r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    const ComplexVector row = parse_vector(j[static_cast<std::size_t>(r)], rp);
    if (r == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) shape_error(rp, "ragged matrix row");
    m.row(r) = row.transpose();
  }
  return m;
}

class ScenarioParser {
public:
  ScenarioParser(Scenario& sc, double tol) : sc_(sc), tol_(tol) {}

  // A subspace spec is an object with exactly one of the keys below.
  Subspace subspace(const json& spec, const std::string& path) const {
    if (!spec.is_object() || spec.empty()) shape_error(path, "expected a subspace spec object");
    if (spec.contains("span")) {
      const json& vs = spec["span"];
      if (!vs.is_array() || vs.empty()) shape_error(path + "/span", "expected a nonempty array of vectors");
      std::vector<ComplexVector> vectors;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        vectors.push_back(parse_vector(vs[i], path + "/span/" + std::to_string(i)));
      }
      const Index d = vectors.front().size();
      return guarded(path, [&] { return subspace_from_spanning(d, vectors, tol_); });
    }
    if (spec.contains("matrix")) {
      const ComplexMatrix m = parse_matrix(spec["matrix"], path + "/matrix");
      return guarded(path, [&] { return range_of(m, tol_); });
    }
    if (spec.contains("tensor")) {
      const json& fs = spec["tensor"];
      if (!fs.is_array() || fs.empty()) shape_error(path + "/tensor", "expected a nonempty array of specs");
      Subspace out = subspace(fs[0], path + "/tensor/0");
      for (std::size_t i = 1; i < fs.size(); ++i) {
        out = tensor_subspace(out, subspace(fs[i], path + "/tensor/" + std::to_string(i)));
      }
      return out;
    }
    if (spec.contains("spin")) {
      const std::string s = get_string(spec["spin"], path + "/spin");
      if (s.size() != 2 || (s[1] != '+' && s[1] != '-')) shape_error(path + "/spin", "expected e.g. \"z+\"");
      const Axis a = guarded(path, [&] { return parse_axis(s.substr(0, 1)); });
      return range_of(spin_projector(a, s[1] == '+'));
    }
    if (spec.contains("full")) return Subspace::full(get_positive(spec["full"], path + "/full"));
    if (spec.contains("zero")) return Subspace::zero(get_positive(spec["zero"], path + "/zero"));
    if (spec.contains("ref")) return reference(get_string(spec["ref"], path + "/ref"), path);
    if (spec.contains("complement")) return complement(subspace(spec["complement"], path + "/complement"));
    if (spec.contains("meet") || spec.contains("join")) {
      const bool is_meet = spec.contains("meet");
      const std::string key = is_meet ? "meet" : "join";
      const json& args = spec[key];
      if (!args.is_array() || args.size() < 2) shape_error(path + "/" + key, "expected at least two specs");
      Subspace out = subspace(args[0], path + "/" + key + "/0");
      for (std::size_t i = 1; i < args.size(); ++i) {
        const Subspace next = subspace(args[i], path + "/" + key + "/" + std::to_string(i));
        out = guarded(path, [&] { return is_meet ? meet(out, next, tol_) : join(out, next, tol_); });
      }
      return out;
    }
    shape_error(path, "unknown subspace spec (expected span, matrix, tensor, spin, full, zero, ref, "
                      "complement, meet or join)");
  }

  Subspace ambient_subspace(const json& spec, const std::string& path) const {
    Subspace s = subspace(spec, path);
    if (s.ambient_dim() != sc_.dimension) {
      throw Error(ErrorCode::ValidationFailed,
                  "at " + path + ": DimensionMismatch: subspace lives in dimension " +
                      std::to_string(s.ambient_dim()) + ", scenario dimension is " +
                      std::to_string(sc_.dimension),
                  {{ErrorCode::DimensionMismatch, "subspace dimension"}});
    }
    return s;
  }

  Context context(const json& j, const std::string& path) const {
    const std::string label = get_string(member(j, "label", path), path + "/label");
    const json& members = member(j, "members", path);
    if (!members.is_array()) shape_error(path + "/members", "expected an array");
    std::vector<Projector> projectors;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::string mp = path + "/members/" + std::to_string(i);
      const json& m = members[i];
      names.push_back(m.contains("name") ? get_string(m["name"], mp + "/name")
                                         : label + "#" + std::to_string(i));
      const json& spec = member(m, "projector", mp);
      if (spec.is_object() && spec.contains("matrix") && spec.size() == 1) {
        // Matrix literals are taken as the projector itself, validated as given.
        const ComplexMatrix mat = parse_matrix(spec["matrix"], mp + "/projector/matrix");
        projectors.push_back(guarded(mp + "/projector", [&] { return Projector::from_matrix(mat, tol_); }));
        if (projectors.back().dim() != sc_.dimension) {
          throw Error(ErrorCode::ValidationFailed, "at " + mp + ": DimensionMismatch: projector dimension",
                      {{ErrorCode::DimensionMismatch, "projector dimension"}});
        }
      } else {
        projectors.push_back(projector_of(ambient_subspace(spec, mp + "/projector")));
      }
    }
    return guarded(path, [&] { return Context::create(label, projectors, names, tol_); });
  }

  Proposition proposition(const json& j, const std::string& path) const {
    Proposition p{get_string(member(j, "name", path), path + "/name"),
                  ambient_subspace(member(j, "subspace", path), path + "/subspace")};
    return p;
  }

  NamedState state(const json& j, const std::string& path) const {
    const std::string name = get_string(member(j, "name", path), path + "/name");
    const ComplexVector v = parse_vector(member(j, "vector", path), path + "/vector");
    if (v.size() != sc_.dimension) {
      throw Error(ErrorCode::ValidationFailed, "at " + path + "/vector: DimensionMismatch: state length " +
                                                   std::to_string(v.size()),
                  {{ErrorCode::DimensionMismatch, "state length"}});
    }
    NamedState s{name, guarded(path + "/vector", [&] { return StateVector(v, tol_); }), std::nullopt};
    if (j.contains("home")) {
      s.home = ambient_subspace(j["home"], path + "/home");
      if (!contains_vector(*s.home, s.state, tol_)) {
        throw Error(ErrorCode::ValidationFailed, "at " + path + "/home: home subspace does not contain the state",
                    {{ErrorCode::InvalidInput, "home does not contain state"}});
      }
    }
    return s;
  }

private:
  Subspace reference(const std::string& name, const std::string& path) const {
    for (const auto& p : sc_.propositions) {
      if (p.name == name) return p.subspace;
    }
    for (const auto& c : sc_.contexts) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.member_names()[i] == name) return c.ranges()[i];
      }
    }
    throw Error(ErrorCode::UnknownReference, "at " + path + "/ref: unknown proposition or member '" + name + "'");
  }

  Scenario& sc_;
  double tol_;
};

std::string object_name(const char* kind, const json& j, const char* key, std::size_t index) {
  if (j.is_object() && j.contains(key) && j[key].is_string()) {
    return std::string(kind) + " " + j[key].get<std::string>();
  }
  return std::string(kind) + " #" + std::to_string(index);
}

EvaluationSpec parse_evaluation(const json& j, const Scenario& sc, const std::string& path) {
  EvaluationSpec e;
  e.state = get_string(member(j, "state", path), path + "/state");
  sc.state(e.state);
  if (j.contains("propositions")) e.propositions = get_string_list(j["propositions"], path + "/propositions");
  for (const auto& p : e.propositions) sc.proposition(p);
  if (j.contains("context")) {
    e.context = get_string(j["context"], path + "/context");
    sc.context(*e.context);
  }
  if (j.contains("collection")) e.collection = get_string_list(j["collection"], path + "/collection");
  for (const auto& c : e.collection) sc.context(c);
  return e;
}

EnvironmentSpec parse_environment(const json& j, const Scenario& sc, const std::string& path) {
  EnvironmentSpec e;
  e.n_env = get_positive(member(j, "n_env", path), path + "/n_env");
  e.splice_index = get_positive(member(j, "splice_index", path), path + "/splice_index");
  e.axis = guarded(path + "/axis", [&] { return parse_axis(get_string(member(j, "axis", path), path + "/axis")); });
  e.isolated_state = get_string(member(j, "isolated_state", path), path + "/isolated_state");
  e.isolated_contexts = get_string_list(member(j, "isolated_contexts", path), path + "/isolated_contexts");
  e.composite_state = get_string(member(j, "composite_state", path), path + "/composite_state");
  e.composite_context = get_string(member(j, "composite_context", path), path + "/composite_context");
  e.q = get_string(member(j, "q", path), path + "/q");
  e.env_prop = get_string(member(j, "env_prop", path), path + "/env_prop");
  sc.state(e.isolated_state);
  sc.state(e.composite_state);
  for (const auto& c : e.isolated_contexts) sc.context(c);
  sc.proposition(e.q);
  sc.proposition(e.env_prop);
  return e;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    // Keep nlohmann's reason, drop its own position prefix.
    std::string reason = e.what();
    if (const auto at = reason.find("column "); at != std::string::npos) {
      if (const auto colon = reason.find(": ", at); colon != std::string::npos) reason = reason.substr(colon + 2);
    }
    os << "line " << line << ", column " << col << ": " << reason;
    throw Error(ErrorCode::SyntaxError, os.str());
  }
}

// Shared by strict parsing (report == nullptr: first failure throws) and
// checking (every object validated, failures recorded).
Scenario parse_impl(const std::string& text, double fallback_eps, CheckReport* report) {
  const json doc = parse_json_text(text);
  if (!doc.is_object()) shape_error("", "scenario must be a JSON object");

  Scenario sc;
  sc.schema_version = static_cast<int>(get_positive(member(doc, "schema_version", ""), "/schema_version"));
  if (sc.schema_version != kScenarioSchemaVersion) {
    shape_error("/schema_version", "unsupported schema version " + std::to_string(sc.schema_version));
  }
  if (doc.contains("eps")) {
    if (!doc["eps"].is_number() || doc["eps"].get<double>() <= 0.0) shape_error("/eps", "expected a positive number");
    sc.eps = doc["eps"].get<double>();
  }
  const double tol = sc.eps.value_or(effective_tol(fallback_eps));
  sc.dimension = get_positive(member(doc, "dimension", ""), "/dimension");
  if (doc.contains("factors")) {
    const json& fs = doc["factors"];
    if (!fs.is_array()) shape_error("/factors", "expected an array");
    Index product = 1;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      sc.factors.push_back(get_positive(fs[i], "/factors/" + std::to_string(i)));
      product *= sc.factors.back();
    }
    if (product != sc.dimension) shape_error("/factors", "factor dimensions do not multiply to the dimension");
  }

  const ScenarioParser parser(sc, tol);
  auto each = [&](const char* key, const char* kind, const char* name_key,
                  const std::function<void(const json&, const std::string&)>& fn) {
    if (!doc.contains(key)) return;
    const json& arr = doc[key];
    if (!arr.is_array()) shape_error(std::string("/") + key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = std::string("/") + key + "/" + std::to_string(i);
      if (!report) {
        fn(arr[i], path);
        continue;
      }
      CheckEntry entry{object_name(kind, arr[i], name_key, i), true, "", "ok"};
      try {
        fn(arr[i], path);
      } catch (const Error& e) {
        entry.ok = false;
        const ErrorCode root = e.code() == ErrorCode::ValidationFailed && !e.issues().empty()
                                   ? e.issues().front().code
                                   : e.code();
        entry.code = std::string(to_string(root));
        entry.message = e.what();
      }
      report->entries.push_back(std::move(entry));
    }
  };

  each("contexts", "context", "label", [&](const json& j, const std::string& path) {
    Context c = parser.context(j, path);
    if (sc.has_context(c.label())) {
      throw Error(ErrorCode::ValidationFailed, "at " + path + ": duplicate context label '" + c.label() + "'",
                  {{ErrorCode::DuplicateLabel, c.label()}});
    }
    sc.contexts.push_back(std::move(c));
  });
  each("propositions", "proposition", "name", [&](const json& j, const std::string& path) {
    Proposition p = parser.proposition(j, path);
    if (sc.has_proposition(p.name)) {
      throw Error(ErrorCode::ValidationFailed, "at " + path + ": duplicate proposition '" + p.name + "'",
                  {{ErrorCode::DuplicateLabel, p.name}});
    }
    sc.propositions.push_back(std::move(p));
  });
  each("states", "state", "name", [&](const json& j, const std::string& path) {
    NamedState s = parser.state(j, path);
    for (const auto& other : sc.states) {
      if (other.name == s.name) {
        throw Error(ErrorCode::ValidationFailed, "at " + path + ": duplicate state '" + s.name + "'",
                    {{ErrorCode::DuplicateLabel, s.name}});
      }
    }
    sc.states.push_back(std::move(s));
  });

  if (report) {
    for (const auto& c : sc.contexts) {
      CheckEntry entry{"lattice " + c.label(), true, "", "ok"};
      const auto issues = verify_lattice_laws(lattice_of(c), c, tol);
      if (!issues.empty()) {
        entry.ok = false;
        entry.code = std::string(to_string(issues.front().code));
        entry.message = issues.front().detail;
      }
      report->entries.push_back(std::move(entry));
    }
  }

  auto section = [&](const char* name, const std::function<void()>& fn) {
    if (!report) {
      fn();
      return;
    }
    CheckEntry entry{name, true, "", "ok"};
    try {
      fn();
    } catch (const Error& e) {
      entry.ok = false;
      const ErrorCode root = e.code() == ErrorCode::ValidationFailed && !e.issues().empty()
                                 ? e.issues().front().code
                                 : e.code();
      entry.code = std::string(to_string(root));
      entry.message = e.what();
    }
    report->entries.push_back(std::move(entry));
  };

  if (doc.contains("evaluation")) {
    section("evaluation", [&] {
      sc.evaluation = parse_evaluation(doc["evaluation"], sc, "/evaluation");
      guarded("/evaluation", [&] {
        (void)sc.valuation_input(sc.evaluation.state, sc.evaluation.collection, tol);
        return 0;
      });
    });
  } else if (!sc.states.empty()) {
    sc.evaluation.state = sc.states.front().name;
  }
  if (doc.contains("environment")) {
    section("environment", [&] { sc.environment = parse_environment(doc["environment"], sc, "/environment"); });
  }
  return sc;
}

ojson complex_json(Complex c) { return ojson::array({c.real(), c.imag()}); }

ojson vector_json(const ComplexVector& v) {
  ojson out = ojson::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

ojson subspace_json(const Subspace& s) {
  if (s.is_zero()) return ojson{{"zero", s.ambient_dim()}};
  if (s.is_full()) return ojson{{"full", s.ambient_dim()}};
  ojson span = ojson::array();
  for (Index k = 0; k < s.dim(); ++k) span.push_back(vector_json(s.basis().col(k)));
  return ojson{{"span", span}};
}

ojson matrix_json(const ComplexMatrix& m) {
  ojson rows = ojson::array();
  for (Index r = 0; r < m.rows(); ++r) rows.push_back(vector_json(m.row(r).transpose()));
  return rows;
}

}  // namespace

Scenario parse_scenario(const std::string& text, double fallback_eps) {
  return parse_impl(text, fallback_eps, nullptr);
}

CheckReport check_scenario(const std::string& text, double fallback_eps) {
  CheckReport report;
  try {
    parse_impl(text, fallback_eps, &report);
  } catch (const Error& e) {
    const ErrorCode root = e.code() == ErrorCode::ValidationFailed && !e.issues().empty()
                               ? e.issues().front().code
                               : e.code();
    report.entries.push_back({"document", false, std::string(to_string(root)), e.what()});
  }
  return report;
}

bool CheckReport::all_ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.ok; });
}

ojson scenario_to_json(const Scenario& sc) {
  ojson out;
  out["schema_version"] = sc.schema_version;
  if (sc.eps) out["eps"] = *sc.eps;
  out["dimension"] = sc.dimension;
  if (!sc.factors.empty()) out["factors"] = sc.factors;

  ojson contexts = ojson::array();
  for (const auto& c : sc.contexts) {
    ojson members = ojson::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
      members.push_back({{"name", c.member_names()[i]}, {"projector", {{"matrix", matrix_json(c.projectors()[i].matrix())}}}});
    }
    contexts.push_back({{"label", c.label()}, {"members", members}});
  }
  out["contexts"] = contexts;

  ojson props = ojson::array();
  for (const auto& p : sc.propositions) props.push_back({{"name", p.name}, {"subspace", subspace_json(p.subspace)}});
  out["propositions"] = props;

  ojson states = ojson::array();
  for (const auto& s : sc.states) {
    ojson js{{"name", s.name}, {"vector", vector_json(s.state.amplitudes())}};
    if (s.home) js["home"] = subspace_json(*s.home);
    states.push_back(js);
  }
  out["states"] = states;

  if (!sc.evaluation.state.empty()) {
    ojson ev{{"state", sc.evaluation.state}};
    if (!sc.evaluation.propositions.empty()) ev["propositions"] = sc.evaluation.propositions;
    if (sc.evaluation.context) ev["context"] = *sc.evaluation.context;
    if (!sc.evaluation.collection.empty()) ev["collection"] = sc.evaluation.collection;
    out["evaluation"] = ev;
  }
  if (sc.environment) {
    const auto& e = *sc.environment;
    out["environment"] = {{"n_env", e.n_env},
                          {"splice_index", e.splice_index},
                          {"axis", std::string(1, axis_char(e.axis))},
                          {"isolated_state", e.isolated_state},
                          {"isolated_contexts", e.isolated_contexts},
                          {"composite_state", e.composite_state},
                          {"composite_context", e.composite_context},
                          {"q", e.q},
                          {"env_prop", e.env_prop}};
  }
  return out;
}

std::string serialize_scenario(const Scenario& scenario) { return scenario_to_json(scenario).dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qprop
