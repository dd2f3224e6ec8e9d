#include "qprop/qubit.hpp"

#include <cmath>

namespace qprop {

char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

Axis parse_axis(std::string_view s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw Error(ErrorCode::InvalidInput, "unknown axis '" + std::string(s) + "'");
}

ComplexMatrix pauli(Axis a) {
  ComplexMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (a) {
    case Axis::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::Y: m << 0.0, -i, i, 0.0; break;
    case Axis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

ComplexVector spin_state(Axis a, bool plus) {
  ComplexVector v(2);
  const double s = 1.0 / std::sqrt(2.0);
  const double sign = plus ? 1.0 : -1.0;
  switch (a) {
    case Axis::Z: v << (plus ? 1.0 : 0.0), (plus ? 0.0 : 1.0); break;
    case Axis::X: v << s, sign * s; break;
    case Axis::Y: v << s, Complex(0.0, sign * s); break;
  }
  return v;
}

Projector spin_projector(Axis a, bool plus) {
  const double sign = plus ? 1.0 : -1.0;
  return Projector::from_matrix(0.5 * (identity_matrix(2) + sign * pauli(a)));
}

Context spin_context(Axis a, const std::string& tag) {
  const std::string axis(1, axis_char(a));
  return Context::create("Sigma_" + tag + axis, {spin_projector(a, true), spin_projector(a, false)},
                         {"P_" + tag + axis + "+", "P_" + tag + axis + "-"});
}

}  // namespace qprop
