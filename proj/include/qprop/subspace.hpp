#pragma once

// Closed linear subspaces of C^d and the projectors, states and lattice
// operations built on them. Every subspace is held as an orthonormal basis;
// {0} is a basis with zero columns, so no operation special-cases it.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qprop/error.hpp"

namespace qprop {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Default relative tolerance for rank cutoffs, membership and equality.
inline constexpr double kDefaultEps = 1e-9;

/// Returns `tol`, or kDefaultEps when `tol` is zero.
inline double effective_tol(double tol) { return tol > 0.0 ? tol : kDefaultEps; }

/// Throws NonFinite if any component is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);

ComplexMatrix identity_matrix(Index d);

/// A nonzero pure state, normalized on construction.
class StateVector {
public:
  explicit StateVector(ComplexVector amplitudes, double tol = kDefaultEps);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

private:
  ComplexVector amplitudes_;
};

/// Largest entrywise violations of the projector conditions.
struct ProjectorDefects {
  double max_asymmetry = 0.0;    // max |M - M^dagger|
  double max_idempotence = 0.0;  // max |M*M - M|
};

ProjectorDefects projector_defects(const ComplexMatrix& m);

class Subspace;

/// Hermitian idempotent d x d matrix.
class Projector {
public:
  /// Validates Hermiticity and idempotence; throws NotAProjector with the
  /// offending magnitude otherwise.
  static Projector from_matrix(ComplexMatrix m, double tol = kDefaultEps);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// round(trace), which is the dimension of the range.
  Index rank() const;

private:
  explicit Projector(ComplexMatrix m) : matrix_(std::move(m)) {}
  friend Projector projector_of(const Subspace& s);
  friend Projector negate(const Projector& p);

  ComplexMatrix matrix_;
};

class Subspace {
public:
  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);
  /// Wraps columns that are already orthonormal (checked within tol).
  static Subspace from_orthonormal(ComplexMatrix basis, double tol = kDefaultEps);

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const ComplexMatrix& basis() const { return basis_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  ComplexMatrix projector_matrix() const { return basis_ * basis_.adjoint(); }

private:
  explicit Subspace(ComplexMatrix basis) : basis_(std::move(basis)) {}
  friend Subspace orthonormalize(Index, const ComplexMatrix&, double);
  friend Subspace pivoted_column_span(const ComplexMatrix&, Index);

  ComplexMatrix basis_;
};

/// Span of the columns of `vectors` (d rows). Modified Gram-Schmidt with a
/// second orthogonalization pass; a column is discarded when its residual is
/// at most tol times the largest input norm. Deterministic for a fixed column
/// order.
Subspace orthonormalize(Index ambient_dim, const ComplexMatrix& vectors, double tol);

/// Span of a list of d-vectors. Throws DimensionMismatch on ragged input.
Subspace subspace_from_spanning(Index ambient_dim, std::span<const ComplexVector> vectors,
                                double tol = 0.0);

/// Orthonormal basis of exactly `count` directions taken from the columns of
/// `m`, always picking the column with the largest remaining residual (lowest
/// index on ties). Used where the target rank is known in advance.
Subspace pivoted_column_span(const ComplexMatrix& m, Index count);

Projector projector_of(const Subspace& s);
Subspace range_of(const Projector& p, double tol = 0.0);
/// Validates `m` first, so arbitrary matrices get a NotAProjector diagnosis.
Subspace range_of(const ComplexMatrix& m, double tol = 0.0);
Projector negate(const Projector& p);

Subspace complement(const Subspace& s);
Subspace join(const Subspace& a, const Subspace& b, double tol = 0.0);
/// Intersection, computed as the complement of the join of the complements.
Subspace meet(const Subspace& a, const Subspace& b, double tol = 0.0);
/// Internal direct sum of pairwise orthogonal parts; throws NotOrthogonal.
Subspace subspace_sum(std::span<const Subspace> parts, double tol = 0.0);

bool contains_vector(const Subspace& s, const ComplexVector& v, double tol = 0.0);
bool contains_vector(const Subspace& s, const StateVector& v, double tol = 0.0);
bool contains_subspace(const Subspace& inner, const Subspace& outer, double tol = 0.0);
/// Mutual containment.
bool same_subspace(const Subspace& a, const Subspace& b, double tol = 0.0);
bool is_invariant_under(const Subspace& s, const Projector& p, double tol = 0.0);

/// Lattice-theoretic commutativity: a ∩ (a ∩ b^⊥)^⊥ ⊆ b, evaluated literally.
bool subspaces_commute(const Subspace& a, const Subspace& b, double tol = 0.0);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const Projector& p, const Projector& q);

struct SpectralTerm {
  double eigenvalue;
  Projector projector;
};

/// Sum over n, m of p_n q_m [P_n, Q_m]. Both families must be resolutions of
/// the identity into mutually annihilating nontrivial projectors.
ComplexMatrix observable_commutator(std::span<const SpectralTerm> p_spec,
                                    std::span<const SpectralTerm> q_spec, double tol = 0.0);

/// Sum of eigenvalue * projector.
ComplexMatrix assemble_observable(std::span<const SpectralTerm> spec);

/// Checks that `projectors` form a complete family of at least two nontrivial,
/// mutually annihilating projectors. Returns every problem found.
std::vector<Issue> validate_resolution(std::span<const Projector> projectors, double tol = 0.0);

}  // namespace qprop
