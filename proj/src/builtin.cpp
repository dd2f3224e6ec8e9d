#include "qprop/builtin.hpp"

#include <array>

#include "qprop/composition.hpp"

namespace qprop {

namespace {

Scenario qubit_scenario(std::span<const Axis> axes) {
  Scenario sc;
  sc.dimension = 2;
  for (Axis a : axes) {
    Context c = spin_context(a);
    for (std::size_t i = 0; i < c.size(); ++i) sc.propositions.push_back({c.member_names()[i], c.ranges()[i]});
    sc.contexts.push_back(std::move(c));
  }
  sc.states.push_back({"Psi", StateVector(spin_state(Axis::Z, true)), std::nullopt});
  sc.evaluation.state = "Psi";
  return sc;
}

}  // namespace

Scenario intro_scenario() {
  constexpr std::array axes{Axis::Z, Axis::X};
  return qubit_scenario(axes);
}

Scenario classical_limit_scenario() {
  constexpr std::array axes{Axis::Z, Axis::X, Axis::Y};
  return qubit_scenario(axes);
}

Scenario environment_scenario() {
  const std::array system{spin_context(Axis::Z, "S"), spin_context(Axis::X, "S")};
  return build_environment_scenario(1, 1, system, Axis::Z);
}

}  // namespace qprop
