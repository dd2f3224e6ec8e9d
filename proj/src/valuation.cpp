#include "qprop/valuation.hpp"

#include <algorithm>

namespace qprop {

std::string_view render(TruthValue v) {
  switch (v) {
    case TruthValue::True: return "1";
    case TruthValue::False: return "0";
    case TruthValue::Gap: return "0/0";
  }
  return "?";
}

std::string_view status_name(TruthValue v) {
  switch (v) {
    case TruthValue::True: return "true";
    case TruthValue::False: return "false";
    case TruthValue::Gap: return "gap";
  }
  return "?";
}

int bivaluation(TruthValue v) {
  if (v == TruthValue::Gap) throw Error(ErrorCode::InvalidInput, "a gap has no bivaluation");
  return v == TruthValue::True ? 1 : 0;
}

ValuationInput::ValuationInput(StateVector state, Subspace home, LatticeCollection collection,
                               double tol)
    : state_(std::move(state)),
      home_(std::move(home)),
      collection_(std::move(collection)),
      tol_(effective_tol(tol)) {
  if (state_.dim() != home_.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and home subspace dimensions differ");
  }
  if (!contains_vector(home_, state_, tol_)) {
    throw Error(ErrorCode::InvalidInput, "home subspace does not contain the state");
  }
  if (collection_.empty() || collection_.ambient_dim() != home_.ambient_dim()) {
    throw Error(ErrorCode::InvalidInput, "lattice collection is empty or has the wrong dimension");
  }
  const bool housed = std::any_of(collection_.lattices().begin(), collection_.lattices().end(),
                                  [&](const auto& l) { return l.contains(home_, tol_); });
  if (!housed) {
    throw Error(ErrorCode::InvalidInput, "home subspace belongs to no lattice of the collection");
  }
}

Subspace span_of(const StateVector& state) {
  const ComplexVector v = state.amplitudes();
  return subspace_from_spanning(state.dim(), std::span<const ComplexVector>(&v, 1));
}

TruthValue evaluate(const ValuationInput& input, const Proposition& prop) {
  const double tol = input.tol();
  if (prop.subspace.ambient_dim() != input.home().ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "proposition '" + prop.name + "' has the wrong dimension");
  }
  // The tautology is decided before any lattice lookup.
  if (prop.subspace.is_full()) return TruthValue::True;
  if (find_common_lattices(input.collection(), input.home(), prop.subspace, tol).empty()) {
    return TruthValue::Gap;
  }
  const Subspace m = meet(input.home(), prop.subspace, tol);
  if (m.is_zero()) return TruthValue::False;
  return contains_vector(m, input.state(), tol) ? TruthValue::True : TruthValue::False;
}

TruthValue evaluate_disjunction_with_negation(const ValuationInput& input, const Proposition& prop) {
  const Proposition either{prop.name + "∨¬" + prop.name, Subspace::full(prop.subspace.ambient_dim())};
  return evaluate(input, either);
}

Proposition negation_of(const Proposition& prop) {
  return {"¬" + prop.name, complement(prop.subspace)};
}

std::vector<TruthValue> context_valuation_profile(const ValuationInput& input, const Context& ctx) {
  const double tol = input.tol();
  if (ctx.dim() != input.home().ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "context and state dimensions differ");
  }
  const bool premise = std::any_of(ctx.ranges().begin(), ctx.ranges().end(),
                                   [&](const Subspace& r) { return same_subspace(r, input.home(), tol); });
  if (!premise) {
    throw Error(ErrorCode::HomeNotInContext,
                "home subspace is not the range of a member of '" + ctx.label() + "'");
  }
  std::vector<TruthValue> profile;
  profile.reserve(ctx.size());
  for (const auto& r : ctx.ranges()) {
    const Subspace m = meet(input.home(), r, tol);
    const bool holds = !m.is_zero() && contains_vector(m, input.state(), tol);
    profile.push_back(holds ? TruthValue::True : TruthValue::False);
  }
  return profile;
}

std::vector<std::pair<std::string, TruthValue>> truth_table(const ValuationInput& input,
                                                            std::span<const Proposition> props) {
  std::vector<std::pair<std::string, TruthValue>> rows;
  rows.reserve(props.size());
  for (const auto& p : props) rows.emplace_back(p.name, evaluate(input, p));
  return rows;
}

TruthValue evaluate_in_sublattice(const StateVector& state, const Subspace& home,
                                  const HilbertSublattice& sublattice, const Proposition& prop,
                                  double tol) {
  tol = effective_tol(tol);
  if (!sublattice.contains(home, tol) || !sublattice.contains(prop.subspace, tol)) {
    throw Error(ErrorCode::NotAnElement, "home or proposition is not in the sublattice");
  }
  if (prop.subspace.is_full()) return TruthValue::True;
  const Subspace m = meet(home, prop.subspace, tol);
  if (m.is_zero()) return TruthValue::False;
  return contains_vector(m, state, tol) ? TruthValue::True : TruthValue::False;
}

}  // namespace qprop
