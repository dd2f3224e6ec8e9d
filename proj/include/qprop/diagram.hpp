#pragma once

// Modified Hasse diagrams: the covering relation of a family of subspaces,
// with each vertex marked true (filled square), false (filled circle), gap
// (hollow circle) or unvalued, rendered as Graphviz DOT.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qprop/valuation.hpp"

namespace qprop {

enum class Marker { TrueSquare, FalseCircle, GapHollow, Unvalued };

std::string_view to_string(Marker m);
Marker marker_for(TruthValue v);

using Edge = std::pair<std::size_t, std::size_t>;  // (lower, upper)

struct HasseVertex {
  std::string label;
  Marker marker = Marker::Unvalued;
  /// Blocks (lattice labels) the vertex belongs to; used for clustering.
  std::vector<std::string> blocks;
};

struct HasseGraph {
  std::string title;
  std::vector<Subspace> subspaces;
  std::vector<HasseVertex> vertices;
  std::vector<Edge> edges;

  std::size_t index_of(const std::string& label) const;  // throws UnknownName
};

/// Transitive reduction of proper containment, sorted. Throws
/// DuplicateElements if two inputs are the same subspace.
std::vector<Edge> covering_relation(std::span<const Subspace> elements, double tol = 0.0);

/// Graph over `elements`; labels must be unique.
HasseGraph hasse_graph(std::string title, std::vector<Subspace> elements,
                       std::vector<std::string> labels, double tol = 0.0);

/// Vertex label for each element: the first proposition with an equal
/// subspace, otherwise "{0}", "H" or "dim-k #i".
std::vector<std::string> vertex_labels(std::span<const Subspace> elements,
                                       std::span<const Proposition> named, double tol = 0.0);

HasseGraph lattice_graph(const InvariantSubspaceLattice& lattice, std::span<const Proposition> named,
                         double tol = 0.0);
HasseGraph sublattice_graph(const HilbertSublattice& sublattice, std::span<const Proposition> named,
                            double tol = 0.0);

/// Sets markers by vertex label; unmentioned vertices become Unvalued.
/// Throws UnknownName for a label with no vertex.
HasseGraph annotate(HasseGraph graph, std::span<const std::pair<std::string, TruthValue>> valuations);

/// Evaluates every vertex subspace in `input` and annotates with the result.
HasseGraph annotate_in(HasseGraph graph, const ValuationInput& input);

/// Drops {0} and the full space and recomputes the covering relation.
HasseGraph without_trivials(const HasseGraph& graph, double tol = 0.0);

struct DotOptions {
  bool cluster_blocks = false;
  bool include_trivials = true;
  /// Label vertices by dimension ("dim-k #i") instead of by name.
  bool dimension_labels = false;
};

/// One digraph; several graphs become separate clusters. Ranked bottom to
/// top by subspace dimension. Output depends only on the input.
std::string emit_dot(std::span<const HasseGraph> graphs, const DotOptions& options = {});
std::string emit_dot(const HasseGraph& graph, const DotOptions& options = {});

}  // namespace qprop
