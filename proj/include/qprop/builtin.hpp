#pragma once

// Scenarios built in code. The fixture files under fixtures/ describe the
// same objects in JSON.

#include "qprop/scenario.hpp"

namespace qprop {

/// One qubit, contexts Sigma_z and Sigma_x, state |z+>.
Scenario intro_scenario();

/// System qubit plus one environment qubit with preferred z basis, the
/// spliced context Sigma_A and the composite state |z+>|z->.
Scenario environment_scenario();

/// One qubit with all three spin contexts, state |z+>.
Scenario classical_limit_scenario();

}  // namespace qprop
