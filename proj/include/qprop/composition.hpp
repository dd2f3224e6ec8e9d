#pragma once

// Composite systems: Kronecker products of subspaces, states and projectors,
// the two-qubit context that splices the system's z and x ranges with the
// environment's preferred states, and the analysis showing how that splice
// turns a truth-value gap into a bivalent proposition.

#include <string>
#include <utility>
#include <vector>

#include "qprop/scenario.hpp"

namespace qprop {

/// Ordered tensor factors, system first, then environment factors.
class CompositeSpace {
public:
  explicit CompositeSpace(std::vector<Index> factor_dims);

  const std::vector<Index>& factor_dims() const { return dims_; }
  Index total_dim() const { return total_; }
  std::size_t factor_count() const { return dims_.size(); }

  /// s placed at `factor`, full space on every other factor.
  Subspace lift(std::size_t factor, const Subspace& s) const;
  /// m placed at `factor`, identity on every other factor.
  ComplexMatrix lift(std::size_t factor, const ComplexMatrix& m) const;

private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Basis columns are the Kronecker products of the factor basis columns.
Subspace tensor_subspace(const Subspace& a, const Subspace& b);
StateVector tensor_state(const StateVector& a, const StateVector& b);
Projector tensor_projector(const Projector& p, const Projector& q);

/// The four rank-1 projectors on C^4 pairing the system's z ranges with the
/// environment's z- range and its x ranges with the z+ range.
Context build_sigma_A();

inline constexpr Index kDefaultMaxDim = Index{1} << 12;

/// A system (whose contexts are given) coupled to n_env environment qubits
/// with preferred basis along env_axis. The first two system contexts are
/// spliced at environment qubit `splice_index` (1-based): members of the
/// first pair with the axis "-" range, members of the second with "+".
/// Throws InvalidSplice, TooLarge or InvalidInput.
Scenario build_environment_scenario(Index n_env, Index splice_index,
                                    std::span<const Context> system_contexts, Axis env_axis,
                                    Index max_dim = kDefaultMaxDim);

enum class PostStatus { Bivalent, StillGap };
/// How a Bivalent verdict was reached.
enum class BivalenceRoute {
  Inference,    // companion and conjunction both false
  Determinate,  // the proposition already had a truth value before coupling
  None,
};

std::string_view to_string(PostStatus s);
std::string_view to_string(BivalenceRoute r);

struct BivalenceReport {
  std::string proposition;
  TruthValue pre_value = TruthValue::Gap;
  /// Lattice holding both the composite home and the conjunction; empty if none.
  std::string witness_lattice;
  std::string companion_env_prop;
  TruthValue companion_value = TruthValue::Gap;
  std::string conjunction;
  TruthValue conjunction_value = TruthValue::Gap;
  PostStatus post_status = PostStatus::StillGap;
  BivalenceRoute route = BivalenceRoute::None;
};

/// Evaluates q in the isolated setting, then the companion environment
/// proposition and the conjunction q ∧ env_prop in the composite state.
/// Throws MissingContext, MissingEnvProp or UnknownReference.
BivalenceReport induced_bivalence(const Scenario& scenario, const std::string& q,
                                  const std::string& env_prop);

struct StabilityVerdict {
  std::vector<Context> retained;
  /// (context label, reason) for each rejected candidate.
  std::vector<std::pair<std::string, std::string>> rejected;
};

/// Keeps candidates whose members commute with the preferred-basis projectors
/// of every environment factor (every factor after the first) of `space`.
StabilityVerdict stability_filter(const CompositeSpace& space, Axis env_axis,
                                  std::span<const Context> candidates, double tol = 0.0);

}  // namespace qprop
