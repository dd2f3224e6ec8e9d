#include <doctest.h>

#include <array>

#include "oracles.hpp"
#include "qprop/builtin.hpp"
#include "qprop/composition.hpp"

using namespace qprop;

namespace {

// Index-arithmetic Kronecker product, independent of kron().
ComplexMatrix kron_by_index(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < out.rows(); ++r) {
    for (Index c = 0; c < out.cols(); ++c) {
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
    }
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidInput;
}

const std::array<Context, 2>& system_contexts() {
  static const std::array<Context, 2> s{spin_context(Axis::Z, "S"), spin_context(Axis::X, "S")};
  return s;
}

}  // namespace

TEST_CASE("kron matches index arithmetic") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::gaussian(oracle::uniform(1, 3, rng), oracle::uniform(1, 3, rng), rng);
    const ComplexMatrix b = oracle::gaussian(oracle::uniform(1, 3, rng), oracle::uniform(1, 3, rng), rng);
    CHECK((kron(a, b) - kron_by_index(a, b)).norm() <= 1e-14);
  }
}

TEST_CASE("tensor products of subspaces, states and projectors") {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Index da = oracle::uniform(1, 3, rng), db = oracle::uniform(1, 3, rng);
    const Subspace a = Subspace::from_orthonormal(oracle::basis(da, oracle::uniform(0, da, rng), rng));
    const Subspace b = Subspace::from_orthonormal(oracle::basis(db, oracle::uniform(0, db, rng), rng));
    const Subspace t = tensor_subspace(a, b);
    CHECK(t.dim() == a.dim() * b.dim());
    CHECK(oracle::same(t.projector_matrix(), kron_by_index(a.projector_matrix(), b.projector_matrix())));
    CHECK(oracle::same(tensor_projector(projector_of(a), projector_of(b)).matrix(), t.projector_matrix()));
  }
  const StateVector s = tensor_state(StateVector(spin_state(Axis::Z, true)), StateVector(spin_state(Axis::Z, false)));
  CHECK(std::abs(s.amplitudes()(1) - Complex(1.0)) < 1e-15);
}

TEST_CASE("lifting places an operator on one factor") {
  const CompositeSpace space({2, 3, 2});
  CHECK(space.total_dim() == 12);
  const ComplexMatrix z = pauli(Axis::Z);
  const ComplexMatrix lifted = space.lift(2, z);
  CHECK((lifted - kron_by_index(kron_by_index(identity_matrix(2), identity_matrix(3)), z)).norm() <= 1e-14);
  const Subspace s = space.lift(0, range_of(spin_projector(Axis::X, true)));
  CHECK(s.dim() == 6);
  CHECK(code_of([&] { (void)space.lift(1, z); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { (void)space.lift(3, z); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("the spliced two-qubit context is valid and its z/x members meet trivially") {
  const Context a = build_sigma_A();
  CHECK(a.size() == 4);
  CHECK(a.member_names()[2] == "P_Sx+∧P_1z+");
  const Subspace zm = tensor_subspace(range_of(spin_projector(Axis::Z, true)), range_of(spin_projector(Axis::Z, false)));
  const Subspace xp = tensor_subspace(range_of(spin_projector(Axis::X, true)), range_of(spin_projector(Axis::Z, true)));
  CHECK(same_subspace(a.ranges()[0], zm));
  CHECK(same_subspace(a.ranges()[2], xp));
  CHECK(meet(zm, xp).is_zero());
  CHECK(oracle::rank_of(oracle::meet_projector(zm.projector_matrix(), xp.projector_matrix())) == 0);
}

TEST_CASE("environment scenarios for several sizes and splice points") {
  for (Index n = 1; n <= 3; ++n) {
    for (Index k = 1; k <= n; ++k) {
      const Scenario sc = build_environment_scenario(n, k, system_contexts(), Axis::Z);
      CHECK(sc.dimension == (Index{2} << n));
      const Context& a = sc.context("Sigma_A");
      CHECK(a.size() == 4);
      CHECK(a.member_names()[0] == "P_Sz+∧P_" + std::to_string(k) + "z-");
      const BivalenceReport r = induced_bivalence(sc, sc.environment->q, sc.environment->env_prop);
      CHECK(r.pre_value == TruthValue::Gap);
      CHECK(r.companion_value == TruthValue::False);
      CHECK(r.conjunction_value == TruthValue::False);
      CHECK(r.post_status == PostStatus::Bivalent);
      CHECK(r.route == BivalenceRoute::Inference);
      CHECK(r.witness_lattice == "Sigma_A");
    }
  }
  const Scenario sx = build_environment_scenario(2, 2, system_contexts(), Axis::X);
  CHECK(sx.has_proposition("P_2x+"));
  CHECK(induced_bivalence(sx, "P_Sx+", "P_2x+").post_status == PostStatus::Bivalent);
}

TEST_CASE("environment scenario preconditions") {
  CHECK(code_of([] { build_environment_scenario(2, 3, system_contexts(), Axis::Z); }) == ErrorCode::InvalidSplice);
  CHECK(code_of([] { build_environment_scenario(2, 0, system_contexts(), Axis::Z); }) == ErrorCode::InvalidSplice);
  CHECK(code_of([] { build_environment_scenario(12, 1, system_contexts(), Axis::Z); }) == ErrorCode::TooLarge);
  const std::array one{spin_context(Axis::Z, "S")};
  CHECK(code_of([&] { build_environment_scenario(1, 1, one, Axis::Z); }) == ErrorCode::InvalidInput);
}

TEST_CASE("bivalence report routes") {
  const Scenario sc = environment_scenario();
  const BivalenceReport determinate = induced_bivalence(sc, "P_Sz+", "P_1z-");
  CHECK(determinate.pre_value == TruthValue::True);
  CHECK(determinate.post_status == PostStatus::Bivalent);
  CHECK(determinate.route == BivalenceRoute::Determinate);

  // The companion P_1z- is true in the composite state, so nothing follows.
  const BivalenceReport open = induced_bivalence(sc, "P_Sx+", "P_1z-");
  CHECK(open.pre_value == TruthValue::Gap);
  CHECK(open.companion_value == TruthValue::True);
  CHECK(open.post_status == PostStatus::StillGap);
  CHECK(open.route == BivalenceRoute::None);

  CHECK(code_of([&] { induced_bivalence(sc, "P_Sx+", "P_9z+"); }) == ErrorCode::MissingEnvProp);
  CHECK(code_of([] { induced_bivalence(intro_scenario(), "P_x+", "P_z+"); }) == ErrorCode::MissingContext);
  CHECK(code_of([&] { induced_bivalence(sc, "nope", "P_1z+"); }) == ErrorCode::UnknownReference);
}

TEST_CASE("stability keeps contexts diagonal in the preferred basis") {
  const Scenario sc = environment_scenario();
  const Scenario rotated = build_environment_scenario(1, 1, system_contexts(), Axis::X);
  std::vector<Context> candidates = sc.contexts;
  candidates.push_back(Context::create("rotated", rotated.context("Sigma_A").projectors()));
  candidates.push_back(spin_context(Axis::Z));
  const StabilityVerdict v = stability_filter(CompositeSpace({2, 2}), Axis::Z, candidates);
  REQUIRE(v.retained.size() == 3);
  CHECK(v.retained[2].label() == "Sigma_A");
  REQUIRE(v.rejected.size() == 2);
  CHECK(v.rejected[0].first == "rotated");
  CHECK(v.rejected[1].second.find("dimension") != std::string::npos);
}
