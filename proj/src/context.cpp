#include "qprop/context.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qprop {

Context Context::create(std::string label, std::vector<Projector> projectors,
                        std::vector<std::string> member_names, double tol) {
  if (label.empty()) {
    throw Error(ErrorCode::InvalidInput, "context label must not be empty");
  }
  auto issues = validate_resolution(projectors, tol);
  if (!issues.empty()) {
    const ErrorCode first = issues.front().code;
    std::string detail = "context '" + label + "': ";
    for (std::size_t i = 0; i < issues.size(); ++i) {
      if (i) detail += "; ";
      detail += std::string(to_string(issues[i].code)) + " (" + issues[i].detail + ")";
    }
    throw Error(first, detail, std::move(issues));
  }
  if (!member_names.empty() && member_names.size() != projectors.size()) {
    throw Error(ErrorCode::InvalidInput, "context '" + label + "': member name count mismatch");
  }

  Context ctx;
  ctx.label_ = std::move(label);
  ctx.ranges_.reserve(projectors.size());
  for (const auto& p : projectors) ctx.ranges_.push_back(range_of(p, tol));
  ctx.projectors_ = std::move(projectors);
  if (member_names.empty()) {
    for (std::size_t i = 0; i < ctx.projectors_.size(); ++i) {
      member_names.push_back(ctx.label_ + "#" + std::to_string(i));
    }
  }
  ctx.names_ = std::move(member_names);
  return ctx;
}

InvariantSubspaceLattice::InvariantSubspaceLattice(const Context& ctx)
    : label_(ctx.label()), atoms_(ctx.ranges()) {
  if (atoms_.size() >= 63) {
    throw Error(ErrorCode::TooLarge, "context '" + label_ + "' has too many members for a lattice");
  }
}

Subspace InvariantSubspaceLattice::element(std::uint64_t mask) const {
  if (mask >= size()) {
    throw Error(ErrorCode::NotAnElement, "lattice mask out of range");
  }
  if (mask == 0) return Subspace::zero(ambient_dim());
  if (mask == size() - 1) return Subspace::full(ambient_dim());
  std::vector<Subspace> parts;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (mask & (std::uint64_t{1} << i)) parts.push_back(atoms_[i]);
  }
  return subspace_sum(parts);
}

std::vector<Subspace> InvariantSubspaceLattice::elements() const {
  if (atoms_.size() > kMaxMaterialized) {
    throw Error(ErrorCode::TooLarge, "lattice of '" + label_ + "' has 2^" +
                                         std::to_string(atoms_.size()) + " elements");
  }
  std::vector<Subspace> out;
  out.reserve(size());
  for (std::uint64_t m = 0; m < size(); ++m) out.push_back(element(m));
  return out;
}

std::optional<std::uint64_t> InvariantSubspaceLattice::find(const Subspace& s, double tol) const {
  if (s.ambient_dim() != ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace and lattice dimensions differ");
  }
  // s is an element iff it is exactly the sum of the atoms it contains.
  std::uint64_t mask = 0;
  Index covered = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (contains_subspace(atoms_[i], s, tol)) {
      mask |= std::uint64_t{1} << i;
      covered += atoms_[i].dim();
    }
  }
  if (covered != s.dim()) return std::nullopt;
  return mask;
}

InvariantSubspaceLattice lattice_of(const Context& ctx) { return InvariantSubspaceLattice(ctx); }

LatticeCollection::LatticeCollection(std::vector<InvariantSubspaceLattice> lattices) {
  for (auto& l : lattices) add(std::move(l));
}

LatticeCollection LatticeCollection::of_contexts(std::span<const Context> contexts) {
  LatticeCollection coll;
  for (const auto& c : contexts) coll.add(lattice_of(c));
  return coll;
}

void LatticeCollection::add(InvariantSubspaceLattice lattice) {
  if (has(lattice.context_label())) {
    throw Error(ErrorCode::DuplicateLabel, "lattice '" + lattice.context_label() + "' already present");
  }
  if (!lattices_.empty() && lattice.ambient_dim() != ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "lattice '" + lattice.context_label() + "' has a different ambient dimension");
  }
  lattices_.push_back(std::move(lattice));
}

Index LatticeCollection::ambient_dim() const {
  if (lattices_.empty()) throw Error(ErrorCode::InvalidInput, "empty lattice collection");
  return lattices_.front().ambient_dim();
}

bool LatticeCollection::has(const std::string& label) const {
  return std::any_of(lattices_.begin(), lattices_.end(),
                     [&](const auto& l) { return l.context_label() == label; });
}

const InvariantSubspaceLattice& LatticeCollection::at(const std::string& label) const {
  for (const auto& l : lattices_) {
    if (l.context_label() == label) return l;
  }
  throw Error(ErrorCode::UnknownLabel, "no lattice labelled '" + label + "'");
}

std::vector<std::string> find_common_lattices(const LatticeCollection& coll, const Subspace& a,
                                              const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "find_common_lattices");
  }
  std::vector<std::string> labels;
  for (const auto& l : coll.lattices()) {
    if (l.contains(a, tol) && l.contains(b, tol)) labels.push_back(l.context_label());
  }
  return labels;
}

bool intertwined(const Context& c1, const Context& c2, double tol) {
  if (c1.dim() != c2.dim()) throw Error(ErrorCode::DimensionMismatch, "intertwined");
  for (const auto& r1 : c1.ranges()) {
    for (const auto& r2 : c2.ranges()) {
      if (same_subspace(r1, r2, tol)) return true;
    }
  }
  return false;
}

std::vector<Subspace> individual_subspaces(const LatticeCollection& coll, const std::string& label,
                                           double tol) {
  const auto& target = coll.at(label);
  std::vector<Subspace> out;
  for (std::uint64_t m = 1; m + 1 < target.size(); ++m) {
    Subspace e = target.element(m);
    const bool shared = std::any_of(coll.lattices().begin(), coll.lattices().end(), [&](const auto& l) {
      return l.context_label() != label && l.contains(e, tol);
    });
    if (!shared) out.push_back(std::move(e));
  }
  return out;
}

std::optional<std::size_t> HilbertSublattice::find(const Subspace& s, double tol) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (same_subspace(elements[i], s, tol)) return i;
  }
  return std::nullopt;
}

HilbertSublattice paste_sublattice(const LatticeCollection& coll, double tol) {
  const Index d = coll.ambient_dim();
  HilbertSublattice out;
  std::vector<std::string> all_labels;
  for (const auto& l : coll.lattices()) all_labels.push_back(l.context_label());

  out.elements.push_back(Subspace::zero(d));
  out.blocks.push_back(all_labels);
  for (const auto& l : coll.lattices()) {
    for (std::uint64_t m = 1; m + 1 < l.size(); ++m) {
      Subspace e = l.element(m);
      if (auto idx = out.find(e, tol)) {
        auto& labels = out.blocks[*idx];
        if (std::find(labels.begin(), labels.end(), l.context_label()) == labels.end()) {
          labels.push_back(l.context_label());
        }
        continue;
      }
      out.elements.push_back(std::move(e));
      out.blocks.push_back({l.context_label()});
    }
  }
  out.elements.push_back(Subspace::full(d));
  out.blocks.push_back(all_labels);
  return out;
}

namespace {

DistributivityReport distributivity(const Subspace& a, const Subspace& b, const Subspace& c,
                                    double tol) {
  Subspace lhs = meet(a, join(b, c, tol), tol);
  Subspace rhs = join(meet(a, b, tol), meet(a, c, tol), tol);
  const bool equal = same_subspace(lhs, rhs, tol);
  return {std::move(lhs), std::move(rhs), equal};
}

template <typename Structure>
void require_elements(const Structure& s, const Subspace& a, const Subspace& b, const Subspace& c,
                      double tol) {
  const char* names[] = {"a", "b", "c"};
  const Subspace* args[] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    if (!s.contains(*args[i], tol)) {
      throw Error(ErrorCode::NotAnElement, std::string("argument ") + names[i] +
                                               " is not an element of the structure");
    }
  }
}

}  // namespace

DistributivityReport check_distributivity(const HilbertSublattice& structure, const Subspace& a,
                                          const Subspace& b, const Subspace& c, double tol) {
  require_elements(structure, a, b, c, tol);
  return distributivity(a, b, c, tol);
}

DistributivityReport check_distributivity(const InvariantSubspaceLattice& structure,
                                          const Subspace& a, const Subspace& b, const Subspace& c,
                                          double tol) {
  require_elements(structure, a, b, c, tol);
  return distributivity(a, b, c, tol);
}

std::vector<Issue> verify_lattice_laws(const InvariantSubspaceLattice& lattice, const Context& ctx,
                                       double tol, std::size_t max_exhaustive) {
  std::vector<Issue> issues;
  const Index d = lattice.ambient_dim();
  if (!lattice.contains(Subspace::zero(d), tol)) issues.push_back({ErrorCode::NotAnElement, "{0} missing"});
  if (!lattice.contains(Subspace::full(d), tol)) issues.push_back({ErrorCode::NotAnElement, "H missing"});
  if (lattice.atom_count() > InvariantSubspaceLattice::kMaxMaterialized) return issues;
  const auto elements = lattice.elements();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (!is_invariant_under(elements[i], ctx.projectors()[k], tol)) {
        issues.push_back({ErrorCode::NotAnElement, "element " + std::to_string(i) + " not invariant under " +
                                                       ctx.member_names()[k]});
      }
    }
  }
  if (elements.size() > max_exhaustive) return issues;
  auto closed = [&](const Subspace& s, const std::string& what) {
    if (!lattice.contains(s, tol)) issues.push_back({ErrorCode::NotAnElement, what + " is not an element"});
  };
  for (std::size_t i = 0; i < elements.size(); ++i) {
    closed(complement(elements[i]), "complement of element " + std::to_string(i));
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const std::string pair = std::to_string(i) + "," + std::to_string(j);
      closed(meet(elements[i], elements[j], tol), "meet of elements " + pair);
      closed(join(elements[i], elements[j], tol), "join of elements " + pair);
      for (std::size_t k = 0; k < elements.size(); ++k) {
        if (!distributivity(elements[i], elements[j], elements[k], tol).equal) {
          issues.push_back({ErrorCode::NotAnElement,
                            "distributivity fails for elements " + pair + "," + std::to_string(k)});
        }
      }
    }
  }
  return issues;
}

}  // namespace qprop
