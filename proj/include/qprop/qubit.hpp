#pragma once

// Spin-1/2 building blocks: Pauli matrices, their eigenstates and
// eigenprojectors, and the two-member context of each spin axis.

#include <string>
#include <string_view>

#include "qprop/context.hpp"

namespace qprop {

enum class Axis { X, Y, Z };

char axis_char(Axis a);
/// Accepts "x", "y", "z" (either case); throws InvalidInput otherwise.
Axis parse_axis(std::string_view s);

ComplexMatrix pauli(Axis a);

/// Normalized eigenvector of the Pauli matrix for eigenvalue +1 (plus=true) or -1.
ComplexVector spin_state(Axis a, bool plus);
/// (1 ± σ)/2.
Projector spin_projector(Axis a, bool plus);

/// Context {P_a+, P_a-} labelled "Sigma_<tag><a>" with members "P_<tag><a>±".
/// Pass tag "S" for the system qubit of a composite, "" for a lone qubit.
Context spin_context(Axis a, const std::string& tag = "");

}  // namespace qprop
