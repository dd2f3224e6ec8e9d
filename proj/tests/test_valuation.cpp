#include <doctest.h>

#include "oracles.hpp"
#include "qprop/qubit.hpp"
#include "qprop/valuation.hpp"

using namespace qprop;

namespace {

// Element of L(ctx) iff P is the sum of the atoms it contains.
bool oracle_element(const Context& ctx, const ComplexMatrix& p) {
  ComplexMatrix sum = ComplexMatrix::Zero(p.rows(), p.cols());
  for (const auto& a : ctx.projectors()) {
    if (oracle::contained(a.matrix(), p)) sum += a.matrix();
  }
  return oracle::same(sum, p);
}

TruthValue oracle_value(const std::vector<Context>& contexts, const ComplexMatrix& home,
                        const ComplexVector& psi, const ComplexMatrix& prop) {
  if (oracle::rank_of(prop) == prop.rows()) return TruthValue::True;
  const bool shared = std::any_of(contexts.begin(), contexts.end(), [&](const Context& c) {
    return oracle_element(c, home) && oracle_element(c, prop);
  });
  if (!shared) return TruthValue::Gap;
  const ComplexMatrix m = oracle::meet_projector(home, prop);
  return (m * psi - psi).norm() <= 1e-8 ? TruthValue::True : TruthValue::False;
}

ValuationInput qubit_input(std::vector<Axis> axes) {
  LatticeCollection coll;
  for (Axis a : axes) coll.add(lattice_of(spin_context(a)));
  const StateVector psi(spin_state(Axis::Z, true));
  return ValuationInput(psi, span_of(psi), std::move(coll));
}

}  // namespace

TEST_CASE("rendering and bivaluation") {
  CHECK(render(TruthValue::Gap) == "0/0");
  CHECK(render(TruthValue::True) == "1");
  CHECK(status_name(TruthValue::False) == "false");
  CHECK(bivaluation(TruthValue::True) == 1);
  CHECK(bivaluation(TruthValue::False) == 0);
  CHECK_THROWS_AS(bivaluation(TruthValue::Gap), Error);
}

TEST_CASE("the spin-z state values z propositions and leaves x gappy") {
  const ValuationInput in = qubit_input({Axis::Z, Axis::X});
  auto value = [&](Axis a, bool plus) { return evaluate(in, {"p", range_of(spin_projector(a, plus))}); };
  CHECK(value(Axis::Z, true) == TruthValue::True);
  CHECK(value(Axis::Z, false) == TruthValue::False);
  CHECK(value(Axis::X, true) == TruthValue::Gap);
  CHECK(value(Axis::X, false) == TruthValue::Gap);

  const Proposition xp{"P_x+", range_of(spin_projector(Axis::X, true))};
  CHECK(evaluate(in, negation_of(xp)) == TruthValue::Gap);
  CHECK(negation_of(xp).name == "¬P_x+");
  CHECK(evaluate_disjunction_with_negation(in, xp) == TruthValue::True);
  CHECK(evaluate(in, {"zero", Subspace::zero(2)}) == TruthValue::False);
}

TEST_CASE("valuation input preconditions") {
  LatticeCollection coll;
  coll.add(lattice_of(spin_context(Axis::Z)));
  const StateVector psi(spin_state(Axis::Z, true));
  CHECK_THROWS_AS(ValuationInput(psi, range_of(spin_projector(Axis::Z, false)), coll), Error);
  CHECK_THROWS_AS(ValuationInput(StateVector(spin_state(Axis::X, true)),
                                 range_of(spin_projector(Axis::X, true)), coll),
                  Error);
  CHECK_THROWS_AS(ValuationInput(psi, span_of(psi), LatticeCollection{}), Error);
  CHECK_NOTHROW(ValuationInput(psi, Subspace::full(2), coll));
}

TEST_CASE("random valuations agree with the projector oracle") {
  oracle::Rng rng(31);
  int gaps = 0, trues = 0, falses = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = oracle::uniform(2, 5, rng);
    std::vector<Context> contexts;
    for (int c = 0; c < 2; ++c) {
      contexts.push_back(oracle::random_context(d, oracle::uniform(2, d, rng), rng, "C" + std::to_string(c)));
    }
    const Context& first = contexts.front();
    const std::size_t h = static_cast<std::size_t>(oracle::uniform(0, static_cast<Index>(first.size()) - 1, rng));
    const Subspace home = first.ranges()[h];
    const StateVector psi(home.basis() * oracle::gaussian(home.dim(), 1, rng));
    const ValuationInput in(psi, home, LatticeCollection::of_contexts(contexts));

    for (const auto& ctx : contexts) {
      const InvariantSubspaceLattice lat = lattice_of(ctx);
      for (std::uint64_t m = 0; m < lat.size(); ++m) {
        const Subspace s = lat.element(m);
        const TruthValue got = evaluate(in, {"s", s});
        const TruthValue want =
            oracle_value(contexts, home.projector_matrix(), psi.amplitudes(), s.projector_matrix());
        CHECK(got == want);
        gaps += got == TruthValue::Gap;
        trues += got == TruthValue::True;
        falses += got == TruthValue::False;
      }
    }
  }
  CHECK(gaps > 0);
  CHECK(trues > 0);
  CHECK(falses > 0);
}

TEST_CASE("context profiles have exactly one true member") {
  oracle::Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = oracle::uniform(2, 5, rng);
    const Context ctx = oracle::random_context(d, oracle::uniform(2, d, rng), rng);
    const LatticeCollection coll = LatticeCollection::of_contexts(std::vector<Context>{ctx});
    for (std::size_t h = 0; h < ctx.size(); ++h) {
      const Subspace& home = ctx.ranges()[h];
      const StateVector psi(home.basis() * oracle::gaussian(home.dim(), 1, rng));
      const auto profile = context_valuation_profile(ValuationInput(psi, home, coll), ctx);
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        CHECK(profile[k] == (k == h ? TruthValue::True : TruthValue::False));
      }
    }
  }
  const ValuationInput in = qubit_input({Axis::Z, Axis::X});
  try {
    context_valuation_profile(in, spin_context(Axis::X));
    FAIL("expected HomeNotInContext");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HomeNotInContext);
  }
}

TEST_CASE("truth tables keep proposition order") {
  const ValuationInput in = qubit_input({Axis::Z, Axis::X});
  const std::vector<Proposition> props{{"b", range_of(spin_projector(Axis::X, true))},
                                       {"a", range_of(spin_projector(Axis::Z, true))}};
  const auto t = truth_table(in, props);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == std::pair<std::string, TruthValue>{"b", TruthValue::Gap});
  CHECK(t[1] == std::pair<std::string, TruthValue>{"a", TruthValue::True});
}

TEST_CASE("every proposition is bivalent in the pasted sublattice") {
  const LatticeCollection coll = LatticeCollection::of_contexts(
      std::vector<Context>{spin_context(Axis::Z), spin_context(Axis::X), spin_context(Axis::Y)});
  const HilbertSublattice k = paste_sublattice(coll);
  const StateVector psi(spin_state(Axis::Z, true));
  const Subspace home = span_of(psi);
  for (const auto& e : k.elements) {
    const TruthValue v = evaluate_in_sublattice(psi, home, k, {"e", e});
    CHECK(v != TruthValue::Gap);
    CHECK(v == (contains_subspace(home, e) ? TruthValue::True : TruthValue::False));
  }
  oracle::Rng rng(33);
  const Subspace outside = Subspace::from_orthonormal(oracle::basis(2, 1, rng));
  CHECK_THROWS_AS(evaluate_in_sublattice(psi, home, k, {"o", outside}), Error);
}
