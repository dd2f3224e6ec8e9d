#pragma once

// Scenario: a serializable bundle of a Hilbert space dimension, named states
// (with optional home subspaces), contexts, propositions and an evaluation
// request. The JSON format is documented in docs/scenario-format.md.

#include <optional>
#include <string>
#include <vector>

#include "qprop/qubit.hpp"
#include "qprop/valuation.hpp"

namespace qprop {

inline constexpr int kScenarioSchemaVersion = 1;

struct NamedState {
  std::string name;
  StateVector state;
  /// Defaults to the span of the state when absent.
  std::optional<Subspace> home;
};

struct EvaluationSpec {
  std::string state;
  /// Proposition names to tabulate; empty means all, in declaration order.
  std::vector<std::string> propositions;
  /// Context whose valuation profile is reported alongside the table.
  std::optional<std::string> context;
  /// Context labels forming the lattice collection; empty means all.
  std::vector<std::string> collection;
};

/// System-plus-environment bookkeeping used by the bivalence analysis.
struct EnvironmentSpec {
  Index n_env = 1;
  Index splice_index = 1;
  Axis axis = Axis::Z;
  std::string isolated_state;
  std::vector<std::string> isolated_contexts;
  std::string composite_state;
  std::string composite_context;
  /// Default system proposition and environment companion for reports.
  std::string q;
  std::string env_prop;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::optional<double> eps;
  Index dimension = 0;
  /// Tensor factor dimensions, system first; empty for a single system.
  std::vector<Index> factors;
  std::vector<NamedState> states;
  std::vector<Context> contexts;
  std::vector<Proposition> propositions;
  EvaluationSpec evaluation;
  std::optional<EnvironmentSpec> environment;

  // Lookups throw UnknownReference.
  const NamedState& state(const std::string& name) const;
  const Context& context(const std::string& label) const;
  const Proposition& proposition(const std::string& name) const;
  bool has_context(const std::string& label) const;
  bool has_proposition(const std::string& name) const;

  Subspace home_of(const NamedState& s) const;
  /// Lattices of the named contexts, or of every context when labels is empty.
  LatticeCollection collection(const std::vector<std::string>& labels) const;
  ValuationInput valuation_input(const std::string& state_name, const std::vector<std::string>& labels,
                                 double tol) const;
  /// Propositions named by the evaluation spec.
  std::vector<Proposition> evaluation_propositions() const;
};

}  // namespace qprop
