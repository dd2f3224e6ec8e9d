#pragma once

// Contexts (complete families of mutually annihilating projectors), the
// Boolean invariant-subspace lattice of each context, collections of such
// lattices, and the Hilbert sublattice obtained by pasting them together.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprop/subspace.hpp"

namespace qprop {

class Context {
public:
  /// Validates pairwise annihilation, completeness and nontriviality; throws
  /// an Error whose issues() lists every violated condition.
  static Context create(std::string label, std::vector<Projector> projectors,
                        std::vector<std::string> member_names = {}, double tol = 0.0);

  const std::string& label() const { return label_; }
  const std::vector<Projector>& projectors() const { return projectors_; }
  /// Range of each projector, in member order.
  const std::vector<Subspace>& ranges() const { return ranges_; }
  /// Display name of each member; "<label>#<i>" unless given.
  const std::vector<std::string>& member_names() const { return names_; }

  Index dim() const { return projectors_.front().dim(); }
  std::size_t size() const { return projectors_.size(); }

private:
  Context() = default;

  std::string label_;
  std::vector<Projector> projectors_;
  std::vector<Subspace> ranges_;
  std::vector<std::string> names_;
};

inline Context context_new(std::string label, std::vector<Projector> projectors, double tol = 0.0) {
  return Context::create(std::move(label), std::move(projectors), {}, tol);
}

/// The Boolean algebra of subset sums of a context's ranges. Elements are
/// addressed by bitmask over the context members and materialized on demand.
class InvariantSubspaceLattice {
public:
  /// Largest context whose elements() may be materialized in one call.
  static constexpr std::size_t kMaxMaterialized = 16;

  explicit InvariantSubspaceLattice(const Context& ctx);

  const std::string& context_label() const { return label_; }
  Index ambient_dim() const { return atoms_.front().ambient_dim(); }
  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<Subspace>& atoms() const { return atoms_; }
  /// 2^n for a context of size n.
  std::uint64_t size() const { return std::uint64_t{1} << atoms_.size(); }

  Subspace element(std::uint64_t mask) const;
  /// All 2^n elements in mask order. Throws TooLarge beyond kMaxMaterialized atoms.
  std::vector<Subspace> elements() const;

  /// Mask of the element equal to s, if s is an element.
  std::optional<std::uint64_t> find(const Subspace& s, double tol = 0.0) const;
  bool contains(const Subspace& s, double tol = 0.0) const { return find(s, tol).has_value(); }

private:
  std::string label_;
  std::vector<Subspace> atoms_;
};

InvariantSubspaceLattice lattice_of(const Context& ctx);

/// Checks that {0} and H are elements, that every element is invariant under
/// every member of ctx, and, when the lattice has at most max_exhaustive
/// elements, closure under meet, join and complement plus distributivity.
/// Empty result means all laws hold.
std::vector<Issue> verify_lattice_laws(const InvariantSubspaceLattice& lattice, const Context& ctx,
                                       double tol = 0.0, std::size_t max_exhaustive = 16);

class LatticeCollection {
public:
  LatticeCollection() = default;
  /// Throws DuplicateLabel or DimensionMismatch.
  explicit LatticeCollection(std::vector<InvariantSubspaceLattice> lattices);
  static LatticeCollection of_contexts(std::span<const Context> contexts);

  void add(InvariantSubspaceLattice lattice);

  const std::vector<InvariantSubspaceLattice>& lattices() const { return lattices_; }
  bool empty() const { return lattices_.empty(); }
  std::size_t size() const { return lattices_.size(); }
  Index ambient_dim() const;
  /// Throws UnknownLabel.
  const InvariantSubspaceLattice& at(const std::string& label) const;
  bool has(const std::string& label) const;

private:
  std::vector<InvariantSubspaceLattice> lattices_;
};

/// Labels of every lattice holding both a and b. Empty means the meet of a
/// and b is undefined within the collection.
std::vector<std::string> find_common_lattices(const LatticeCollection& coll, const Subspace& a,
                                              const Subspace& b, double tol = 0.0);

/// True iff the contexts share a projector.
bool intertwined(const Context& c1, const Context& c2, double tol = 0.0);

/// Nontrivial elements of the named lattice that occur in no other lattice.
std::vector<Subspace> individual_subspaces(const LatticeCollection& coll, const std::string& label,
                                           double tol = 0.0);

struct HilbertSublattice {
  /// {0} first, then nontrivial elements in lattice order, then H.
  std::vector<Subspace> elements;
  /// For each element, the labels of the blocks containing it.
  std::vector<std::vector<std::string>> blocks;

  std::optional<std::size_t> find(const Subspace& s, double tol = 0.0) const;
  bool contains(const Subspace& s, double tol = 0.0) const { return find(s, tol).has_value(); }
};

/// Deduplicated union of all lattices, glued at shared elements.
HilbertSublattice paste_sublattice(const LatticeCollection& coll, double tol = 0.0);

struct DistributivityReport {
  Subspace lhs;  // a ∧ (b ∨ c)
  Subspace rhs;  // (a ∧ b) ∨ (a ∧ c)
  bool equal;
};

/// Meets and joins are taken in the ambient space. Throws NotAnElement if
/// any argument is outside the given structure.
DistributivityReport check_distributivity(const HilbertSublattice& structure, const Subspace& a,
                                          const Subspace& b, const Subspace& c, double tol = 0.0);
DistributivityReport check_distributivity(const InvariantSubspaceLattice& structure,
                                          const Subspace& a, const Subspace& b, const Subspace& c,
                                          double tol = 0.0);

}  // namespace qprop
