#include "qprop/subspace.hpp"

#include <cmath>
#include <sstream>

namespace qprop {

namespace {

void require_same_dim(Index a, Index b, std::string_view what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": " << a << " vs " << b;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Two passes of modified Gram-Schmidt of r against the columns of q.
void orthogonalize_against(const ComplexMatrix& q, Index cols, ComplexVector& r) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index k = 0; k < cols; ++k) {
      r -= q.col(k) * q.col(k).dot(r);
    }
  }
}

}  // namespace

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN or infinite entries");
  }
}

ComplexMatrix identity_matrix(Index d) { return ComplexMatrix::Identity(d, d); }

StateVector::StateVector(ComplexVector amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
  require_finite(amplitudes_, "state vector");
  const double n = amplitudes_.norm();
  if (amplitudes_.size() == 0 || n <= effective_tol(tol)) {
    throw Error(ErrorCode::InvalidState, "state vector must be nonzero");
  }
  amplitudes_ /= n;
}

ProjectorDefects projector_defects(const ComplexMatrix& m) {
  ProjectorDefects d;
  d.max_asymmetry = max_abs(m - m.adjoint());
  d.max_idempotence = max_abs(m * m - m);
  return d;
}

Projector Projector::from_matrix(ComplexMatrix m, double tol) {
  tol = effective_tol(tol);
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "projector must be square and nonempty, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  require_finite(m, "projector");
  const ProjectorDefects d = projector_defects(m);
  if (d.max_asymmetry > tol) {
    std::ostringstream os;
    os << "not Hermitian, max asymmetry " << d.max_asymmetry;
    throw Error(ErrorCode::NotAProjector, os.str());
  }
  if (d.max_idempotence > tol) {
    std::ostringstream os;
    os << "not idempotent, max |P*P - P| " << d.max_idempotence;
    throw Error(ErrorCode::NotAProjector, os.str());
  }
  return Projector(std::move(m));
}

Index Projector::rank() const {
  return static_cast<Index>(std::llround(matrix_.trace().real()));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(ComplexMatrix(ambient_dim, 0)); }

Subspace Subspace::full(Index ambient_dim) { return Subspace(identity_matrix(ambient_dim)); }

Subspace Subspace::from_orthonormal(ComplexMatrix basis, double tol) {
  require_finite(basis, "basis");
  const Index r = basis.cols();
  const double err = max_abs(basis.adjoint() * basis - identity_matrix(r));
  if (err > effective_tol(tol)) {
    std::ostringstream os;
    os << "basis columns are not orthonormal (max deviation " << err << ")";
    throw Error(ErrorCode::NotOrthogonal, os.str());
  }
  return Subspace(std::move(basis));
}

Subspace orthonormalize(Index ambient_dim, const ComplexMatrix& vectors, double tol) {
  tol = effective_tol(tol);
  require_same_dim(vectors.rows(), ambient_dim, "spanning vector length");
  require_finite(vectors, "spanning vectors");

  const double largest = vectors.cols() == 0 ? 0.0 : vectors.colwise().norm().maxCoeff();
  ComplexMatrix q(ambient_dim, std::min(vectors.cols(), ambient_dim));
  Index rank = 0;
  for (Index j = 0; j < vectors.cols() && rank < ambient_dim; ++j) {
    ComplexVector r = vectors.col(j);
    orthogonalize_against(q, rank, r);
    const double rn = r.norm();
    if (rn == 0.0 || rn <= tol * largest) continue;
    q.col(rank++) = r / rn;
  }
  return Subspace(q.leftCols(rank));
}

Subspace subspace_from_spanning(Index ambient_dim, std::span<const ComplexVector> vectors, double tol) {
  ComplexMatrix m(ambient_dim, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require_same_dim(vectors[j].size(), ambient_dim, "spanning vector length");
    m.col(static_cast<Index>(j)) = vectors[j];
  }
  return orthonormalize(ambient_dim, m, tol);
}

Subspace pivoted_column_span(const ComplexMatrix& m, Index count) {
  const Index d = m.rows();
  ComplexMatrix residual = m;
  ComplexMatrix q(d, count);
  for (Index k = 0; k < count; ++k) {
    Index best = 0;
    double best_norm = -1.0;
    for (Index j = 0; j < residual.cols(); ++j) {
      const double n = residual.col(j).norm();
      if (n > best_norm) {
        best_norm = n;
        best = j;
      }
    }
    if (best_norm <= 1e-12) {
      throw Error(ErrorCode::NotAProjector, "matrix has lower rank than its trace implies");
    }
    ComplexVector v = residual.col(best) / best_norm;
    orthogonalize_against(q, k, v);
    v.normalize();
    q.col(k) = v;
    residual -= v * (v.adjoint() * residual);
  }
  return Subspace(std::move(q));
}

Projector projector_of(const Subspace& s) { return Projector(s.projector_matrix()); }

Subspace range_of(const Projector& p, double tol) {
  (void)tol;
  const Index rank = p.rank();
  if (rank <= 0) return Subspace::zero(p.dim());
  if (rank >= p.dim()) return Subspace::full(p.dim());
  return pivoted_column_span(p.matrix(), rank);
}

Subspace range_of(const ComplexMatrix& m, double tol) {
  return range_of(Projector::from_matrix(m, tol), tol);
}

Projector negate(const Projector& p) { return Projector(identity_matrix(p.dim()) - p.matrix()); }

Subspace complement(const Subspace& s) {
  const Index d = s.ambient_dim();
  if (s.is_zero()) return Subspace::full(d);
  if (s.is_full()) return Subspace::zero(d);
  return pivoted_column_span(identity_matrix(d) - s.projector_matrix(), d - s.dim());
}

Subspace join(const Subspace& a, const Subspace& b, double tol) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "join");
  ComplexMatrix cols(a.ambient_dim(), a.dim() + b.dim());
  cols << a.basis(), b.basis();
  return orthonormalize(a.ambient_dim(), cols, tol);
}

Subspace meet(const Subspace& a, const Subspace& b, double tol) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "meet");
  return complement(join(complement(a), complement(b), tol));
}

Subspace subspace_sum(std::span<const Subspace> parts, double tol) {
  tol = effective_tol(tol);
  if (parts.empty()) {
    throw Error(ErrorCode::InvalidInput, "subspace_sum needs at least one part");
  }
  const Index d = parts.front().ambient_dim();
  Index total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    require_same_dim(parts[i].ambient_dim(), d, "subspace_sum");
    for (std::size_t j = 0; j < i; ++j) {
      const double overlap = max_abs(parts[j].basis().adjoint() * parts[i].basis());
      if (overlap > tol) {
        std::ostringstream os;
        os << "parts " << j << " and " << i << " overlap by " << overlap;
        throw Error(ErrorCode::NotOrthogonal, os.str());
      }
    }
    total += parts[i].dim();
  }
  ComplexMatrix basis(d, total);
  Index col = 0;
  for (const auto& p : parts) {
    basis.middleCols(col, p.dim()) = p.basis();
    col += p.dim();
  }
  // Re-orthonormalize so parts that are orthogonal only within tol still
  // yield an exactly orthonormal basis.
  Subspace sum = orthonormalize(d, basis, tol);
  if (sum.dim() != total) {
    throw Error(ErrorCode::NotOrthogonal, "parts are not linearly independent");
  }
  return sum;
}

bool contains_vector(const Subspace& s, const ComplexVector& v, double tol) {
  tol = effective_tol(tol);
  require_same_dim(s.ambient_dim(), v.size(), "contains_vector");
  const ComplexVector projected = s.basis() * (s.basis().adjoint() * v);
  return (projected - v).norm() <= tol * v.norm();
}

bool contains_vector(const Subspace& s, const StateVector& v, double tol) {
  return contains_vector(s, v.amplitudes(), tol);
}

bool contains_subspace(const Subspace& inner, const Subspace& outer, double tol) {
  require_same_dim(inner.ambient_dim(), outer.ambient_dim(), "contains_subspace");
  if (inner.dim() > outer.dim()) return false;
  for (Index k = 0; k < inner.dim(); ++k) {
    if (!contains_vector(outer, ComplexVector(inner.basis().col(k)), tol)) return false;
  }
  return true;
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "same_subspace");
  return a.dim() == b.dim() && contains_subspace(a, b, tol) && contains_subspace(b, a, tol);
}

bool is_invariant_under(const Subspace& s, const Projector& p, double tol) {
  require_same_dim(s.ambient_dim(), p.dim(), "is_invariant_under");
  for (Index k = 0; k < s.dim(); ++k) {
    const ComplexVector image = p.matrix() * s.basis().col(k);
    if (image.norm() <= effective_tol(tol)) continue;
    if (!contains_vector(s, image, tol)) return false;
  }
  return true;
}

bool subspaces_commute(const Subspace& a, const Subspace& b, double tol) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "subspaces_commute");
  const Subspace a_without_b = meet(a, complement(b), tol);
  const Subspace rest = meet(a, complement(a_without_b), tol);
  return contains_subspace(rest, b, tol);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "commutator");
  return a * b - b * a;
}

ComplexMatrix commutator(const Projector& p, const Projector& q) {
  return commutator(p.matrix(), q.matrix());
}

namespace {

void validate_spectrum(std::span<const SpectralTerm> spec, double tol, std::string_view which) {
  std::vector<Projector> projectors;
  projectors.reserve(spec.size());
  for (const auto& t : spec) projectors.push_back(t.projector);
  const auto issues = validate_resolution(projectors, tol);
  if (!issues.empty()) {
    throw Error(ErrorCode::InvalidSpectralDecomposition,
                std::string(which) + ": " + issues.front().detail, issues);
  }
}

}  // namespace

ComplexMatrix assemble_observable(std::span<const SpectralTerm> spec) {
  if (spec.empty()) throw Error(ErrorCode::InvalidSpectralDecomposition, "empty spectrum");
  ComplexMatrix m = ComplexMatrix::Zero(spec.front().projector.dim(), spec.front().projector.dim());
  for (const auto& t : spec) m += t.eigenvalue * t.projector.matrix();
  return m;
}

ComplexMatrix observable_commutator(std::span<const SpectralTerm> p_spec,
                                    std::span<const SpectralTerm> q_spec, double tol) {
  validate_spectrum(p_spec, tol, "first observable");
  validate_spectrum(q_spec, tol, "second observable");
  require_same_dim(p_spec.front().projector.dim(), q_spec.front().projector.dim(),
                   "observable_commutator");
  const Index d = p_spec.front().projector.dim();
  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  for (const auto& p : p_spec) {
    for (const auto& q : q_spec) {
      c += (p.eigenvalue * q.eigenvalue) * commutator(p.projector, q.projector);
    }
  }
  return c;
}

std::vector<Issue> validate_resolution(std::span<const Projector> projectors, double tol) {
  tol = effective_tol(tol);
  std::vector<Issue> issues;
  if (projectors.size() < 2) {
    issues.push_back({ErrorCode::TooFewMembers, "a context needs at least two projectors, got " +
                                                     std::to_string(projectors.size())});
  }
  if (projectors.empty()) return issues;

  const Index d = projectors.front().dim();
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].dim() != d) {
      std::ostringstream os;
      os << "member " << i << " has dimension " << projectors[i].dim() << ", expected " << d;
      issues.push_back({ErrorCode::DimensionMismatch, os.str()});
      return issues;
    }
  }

  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Index r = projectors[i].rank();
    if (r <= 0 || r >= d) {
      std::ostringstream os;
      os << "member " << i << " is trivial (rank " << r << " in dimension " << d << ")";
      issues.push_back({ErrorCode::TrivialMember, os.str()});
    }
  }

  double worst_product = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      const double pq = max_abs(projectors[i].matrix() * projectors[j].matrix());
      const double qp = max_abs(projectors[j].matrix() * projectors[i].matrix());
      const double worst = std::max(pq, qp);
      if (worst > worst_product) {
        worst_product = worst;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst_product > tol) {
    std::ostringstream os;
    os << "members " << wi << " and " << wj << " do not annihilate (max |PQ| " << worst_product
       << ")";
    issues.push_back({ErrorCode::NotOrthogonal, os.str()});
  }

  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& p : projectors) sum += p.matrix();
  const double deviation = max_abs(sum - identity_matrix(d));
  if (deviation > tol) {
    std::ostringstream os;
    os << "projectors sum to a matrix of trace " << sum.trace().real() << ", expected identity of trace "
       << d << " (max deviation " << deviation << ")";
    issues.push_back({ErrorCode::Incomplete, os.str()});
  }
  return issues;
}

}  // namespace qprop
