#pragma once

// Three-valued valuation of propositions in a pure state. A proposition gets
// a truth value only when the state's home subspace and the proposition's
// subspace lie in a common lattice of the collection; otherwise it has a
// truth-value gap. The full space is always true, even when its disjuncts Q
// and ¬Q are both gappy.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qprop/context.hpp"

namespace qprop {

enum class TruthValue { True, False, Gap };

/// "1", "0" or "0/0".
std::string_view render(TruthValue v);
/// "true", "false" or "gap".
std::string_view status_name(TruthValue v);
/// 1 for True, 0 otherwise. Gap has no bivaluation and throws InvalidInput.
int bivaluation(TruthValue v);

struct Proposition {
  std::string name;
  Subspace subspace;
};

/// A state together with its home subspace and the lattice collection the
/// valuation works in.
class ValuationInput {
public:
  /// Throws InvalidInput unless the home contains the state and belongs to at
  /// least one lattice of the collection.
  ValuationInput(StateVector state, Subspace home, LatticeCollection collection, double tol = 0.0);

  const StateVector& state() const { return state_; }
  const Subspace& home() const { return home_; }
  const LatticeCollection& collection() const { return collection_; }
  double tol() const { return tol_; }

private:
  StateVector state_;
  Subspace home_;
  LatticeCollection collection_;
  double tol_;
};

/// The one-dimensional span of the state, the default home.
Subspace span_of(const StateVector& state);

TruthValue evaluate(const ValuationInput& input, const Proposition& prop);

/// Value of Q ∨ ¬Q, represented by the full space; always True.
TruthValue evaluate_disjunction_with_negation(const ValuationInput& input, const Proposition& prop);

/// "¬<name>" over the orthogonal complement.
Proposition negation_of(const Proposition& prop);

/// Value of each member of `ctx` when the home is one of the context's ranges.
/// Evaluated inside the context's own lattice. Throws HomeNotInContext.
std::vector<TruthValue> context_valuation_profile(const ValuationInput& input, const Context& ctx);

std::vector<std::pair<std::string, TruthValue>> truth_table(const ValuationInput& input,
                                                            std::span<const Proposition> props);

/// Valuation inside a pasted Hilbert sublattice, where the meet of any two
/// elements is defined; every proposition is bivalent there.
TruthValue evaluate_in_sublattice(const StateVector& state, const Subspace& home,
                                  const HilbertSublattice& sublattice, const Proposition& prop,
                                  double tol = 0.0);

}  // namespace qprop
