#include <doctest.h>

#include "oracles.hpp"
#include "qprop/context.hpp"
#include "qprop/qubit.hpp"

using namespace qprop;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("context validation collects all issues") {
  const Projector zp = spin_projector(Axis::Z, true), xp = spin_projector(Axis::X, true);
  try {
    Context::create("bad", {zp, xp});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.has(ErrorCode::NotOrthogonal));
    CHECK(e.has(ErrorCode::Incomplete));
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }
  CHECK(code_of([&] { Context::create("one", {Projector::from_matrix(identity_matrix(2))}); }) ==
        ErrorCode::TooFewMembers);
  CHECK(code_of([&] { Context::create("", {zp, spin_projector(Axis::Z, false)}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("spin contexts carry their names") {
  const Context c = spin_context(Axis::X, "S");
  CHECK(c.label() == "Sigma_Sx");
  CHECK(c.member_names() == std::vector<std::string>{"P_Sx+", "P_Sx-"});
  CHECK(c.dim() == 2);
  const Context d = context_new("plain", {spin_projector(Axis::Y, true), spin_projector(Axis::Y, false)});
  CHECK(d.member_names().front() == "plain#0");
}

TEST_CASE("lattice elements are the subset sums of the ranges") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = oracle::uniform(2, 6, rng);
    const Index n = oracle::uniform(2, d, rng);
    const Context ctx = oracle::random_context(d, n, rng);
    const InvariantSubspaceLattice lat = lattice_of(ctx);
    REQUIRE(lat.size() == (std::uint64_t{1} << n));
    for (std::uint64_t mask = 0; mask < lat.size(); ++mask) {
      ComplexMatrix expected = ComplexMatrix::Zero(d, d);
      for (Index k = 0; k < n; ++k) {
        if (mask >> k & 1) expected += ctx.projectors()[static_cast<std::size_t>(k)].matrix();
      }
      const Subspace e = lat.element(mask);
      CHECK(oracle::same(e.projector_matrix(), expected));
      const auto found = lat.find(e);
      REQUIRE(found.has_value());
      CHECK(*found == mask);
    }
    CHECK(lat.contains(Subspace::zero(d)));
    CHECK(lat.contains(Subspace::full(d)));
    CHECK(verify_lattice_laws(lat, ctx).empty());
  }
}

TEST_CASE("a subspace cutting across atoms is not an element") {
  const Context z = spin_context(Axis::Z);
  const InvariantSubspaceLattice lat = lattice_of(z);
  CHECK_FALSE(lat.contains(range_of(spin_projector(Axis::X, true))));

  oracle::Rng rng(22);
  const Context ctx = oracle::random_context(4, 2, rng);
  const InvariantSubspaceLattice big = lattice_of(ctx);
  // A vector with weight in both atoms, but not the whole sum.
  const ComplexVector v = ctx.ranges()[0].basis().col(0) + ctx.ranges()[1].basis().col(0);
  const std::vector<ComplexVector> vs{v};
  CHECK_FALSE(big.contains(subspace_from_spanning(4, vs)));
}

TEST_CASE("materializing too many elements is refused") {
  const Index d = 17;
  std::vector<Projector> ps;
  for (Index k = 0; k < d; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(k, k) = 1.0;
    ps.push_back(Projector::from_matrix(m));
  }
  const InvariantSubspaceLattice lat = lattice_of(Context::create("big", ps));
  CHECK(lat.size() == (std::uint64_t{1} << 17));
  CHECK(lat.element(5).dim() == 2);
  CHECK(code_of([&] { (void)lat.elements(); }) == ErrorCode::TooLarge);
}

TEST_CASE("lattice collections") {
  LatticeCollection coll;
  coll.add(lattice_of(spin_context(Axis::Z)));
  coll.add(lattice_of(spin_context(Axis::X)));
  CHECK(coll.size() == 2);
  CHECK(coll.has("Sigma_x"));
  CHECK(coll.at("Sigma_z").atom_count() == 2);
  CHECK(code_of([&] { (void)coll.at("Sigma_q"); }) == ErrorCode::UnknownLabel);
  CHECK(code_of([&] { coll.add(lattice_of(spin_context(Axis::Z))); }) == ErrorCode::DuplicateLabel);
  oracle::Rng rng(23);
  CHECK(code_of([&] { coll.add(lattice_of(oracle::random_context(3, 2, rng))); }) ==
        ErrorCode::DimensionMismatch);

  const Subspace zp = range_of(spin_projector(Axis::Z, true));
  const Subspace xp = range_of(spin_projector(Axis::X, true));
  CHECK(find_common_lattices(coll, zp, zp) == std::vector<std::string>{"Sigma_z"});
  CHECK(find_common_lattices(coll, zp, xp).empty());
  CHECK(find_common_lattices(coll, Subspace::zero(2), Subspace::full(2)).size() == 2);
}

TEST_CASE("intertwined contexts share a projector") {
  const Projector e0 = Projector::from_matrix(ComplexMatrix::Identity(3, 3).col(0) *
                                              ComplexMatrix::Identity(3, 3).col(0).adjoint());
  const Projector rest = negate(e0);
  const Context a = Context::create("A", {e0, rest});
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  u(1, 1) = u(2, 2) = u(1, 2) = 1.0 / std::sqrt(2.0);
  u(2, 1) = -1.0 / std::sqrt(2.0);
  auto proj = [&](Index k) { return Projector::from_matrix(u.col(k) * u.col(k).adjoint()); };
  const Context b = Context::create("B", {proj(0), proj(1), proj(2)});
  CHECK(intertwined(a, b));
  CHECK_FALSE(intertwined(spin_context(Axis::Z), spin_context(Axis::X)));

  const LatticeCollection coll = LatticeCollection::of_contexts(std::vector<Context>{a, b});
  // Individual to A: nothing (its atoms are both in L(B)). Individual to B:
  // the rank-1 ranges 1 and 2 and their sums with range 0.
  CHECK(individual_subspaces(coll, "A").empty());
  CHECK(individual_subspaces(coll, "B").size() == 4);
}

TEST_CASE("pasting the qubit blocks gives K(C^2)") {
  const LatticeCollection coll = LatticeCollection::of_contexts(
      std::vector<Context>{spin_context(Axis::Z), spin_context(Axis::X), spin_context(Axis::Y)});
  const HilbertSublattice k = paste_sublattice(coll);
  REQUIRE(k.elements.size() == 8);
  CHECK(k.elements.front().is_zero());
  CHECK(k.elements.back().is_full());
  CHECK(k.blocks.front().size() == 3);
  CHECK(k.blocks[1] == std::vector<std::string>{"Sigma_z"});
  CHECK(k.contains(range_of(spin_projector(Axis::Y, false))));
}

TEST_CASE("distributivity holds inside a block and fails across blocks") {
  const Subspace zp = range_of(spin_projector(Axis::Z, true));
  const Subspace zm = range_of(spin_projector(Axis::Z, false));
  const Subspace xp = range_of(spin_projector(Axis::X, true));
  const Subspace xm = range_of(spin_projector(Axis::X, false));
  const LatticeCollection coll =
      LatticeCollection::of_contexts(std::vector<Context>{spin_context(Axis::Z), spin_context(Axis::X)});
  const HilbertSublattice k = paste_sublattice(coll);

  const DistributivityReport r = check_distributivity(k, zp, xp, xm);
  CHECK_FALSE(r.equal);
  CHECK(same_subspace(r.lhs, zp));
  CHECK(r.rhs.is_zero());

  const DistributivityReport inside = check_distributivity(coll.at("Sigma_z"), zp, zm, Subspace::full(2));
  CHECK(inside.equal);
  CHECK(code_of([&] { (void)check_distributivity(coll.at("Sigma_z"), zp, xp, zm); }) == ErrorCode::NotAnElement);
}
