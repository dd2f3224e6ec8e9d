#include "qprop/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qprop {

std::string_view to_string(Marker m) {
  switch (m) {
    case Marker::TrueSquare: return "TrueSquare";
    case Marker::FalseCircle: return "FalseCircle";
    case Marker::GapHollow: return "GapHollow";
    case Marker::Unvalued: return "Unvalued";
  }
  return "Unvalued";
}

Marker marker_for(TruthValue v) {
  switch (v) {
    case TruthValue::True: return Marker::TrueSquare;
    case TruthValue::False: return Marker::FalseCircle;
    case TruthValue::Gap: return Marker::GapHollow;
  }
  return Marker::Unvalued;
}

std::size_t HasseGraph::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].label == label) return i;
  }
  throw Error(ErrorCode::UnknownName, "no vertex labelled '" + label + "'");
}

std::vector<Edge> covering_relation(std::span<const Subspace> elements, double tol) {
  const std::size_t n = elements.size();
  // below[i][j]: elements[i] is a proper subspace of elements[j]
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!contains_subspace(elements[i], elements[j], tol)) continue;
      if (elements[i].dim() == elements[j].dim()) {
        throw Error(ErrorCode::DuplicateElements,
                    "elements " + std::to_string(std::min(i, j)) + " and " +
                        std::to_string(std::max(i, j)) + " are the same subspace");
      }
      below[i][j] = 1;
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!below[i][j]) continue;
      bool covered = true;
      for (std::size_t w = 0; w < n && covered; ++w) {
        if (below[i][w] && below[w][j]) covered = false;
      }
      if (covered) edges.emplace_back(i, j);
    }
  }
  return edges;
}

HasseGraph hasse_graph(std::string title, std::vector<Subspace> elements, std::vector<std::string> labels,
                       double tol) {
  if (labels.size() != elements.size()) {
    throw Error(ErrorCode::InvalidInput, "one label per element required");
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw Error(ErrorCode::InvalidInput, "duplicate vertex label '" + l + "'");
  }
  HasseGraph g;
  g.title = std::move(title);
  g.edges = covering_relation(elements, tol);
  g.subspaces = std::move(elements);
  for (auto& l : labels) g.vertices.push_back({std::move(l), Marker::Unvalued, {}});
  return g;
}

std::vector<std::string> vertex_labels(std::span<const Subspace> elements,
                                       std::span<const Proposition> named, double tol) {
  std::vector<std::string> labels;
  std::set<std::string> used;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Subspace& e = elements[i];
    std::string label;
    for (const auto& p : named) {
      if (p.subspace.ambient_dim() == e.ambient_dim() && !used.count(p.name) &&
          same_subspace(p.subspace, e, tol)) {
        label = p.name;
        break;
      }
    }
    if (label.empty()) {
      if (e.is_zero()) {
        label = "{0}";
      } else if (e.is_full()) {
        label = "H";
      } else {
        label = "dim-" + std::to_string(e.dim()) + " #" + std::to_string(i);
      }
    }
    used.insert(label);
    labels.push_back(std::move(label));
  }
  return labels;
}

HasseGraph lattice_graph(const InvariantSubspaceLattice& lattice, std::span<const Proposition> named,
                         double tol) {
  auto elements = lattice.elements();
  auto labels = vertex_labels(elements, named, tol);
  HasseGraph g = hasse_graph(lattice.context_label(), std::move(elements), std::move(labels), tol);
  for (auto& v : g.vertices) v.blocks = {lattice.context_label()};
  return g;
}

HasseGraph sublattice_graph(const HilbertSublattice& sublattice, std::span<const Proposition> named,
                            double tol) {
  auto labels = vertex_labels(sublattice.elements, named, tol);
  HasseGraph g = hasse_graph("sublattice", sublattice.elements, std::move(labels), tol);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) g.vertices[i].blocks = sublattice.blocks[i];
  return g;
}

HasseGraph annotate(HasseGraph graph, std::span<const std::pair<std::string, TruthValue>> valuations) {
  for (auto& v : graph.vertices) v.marker = Marker::Unvalued;
  for (const auto& [name, value] : valuations) {
    graph.vertices[graph.index_of(name)].marker = marker_for(value);
  }
  return graph;
}

HasseGraph annotate_in(HasseGraph graph, const ValuationInput& input) {
  std::vector<std::pair<std::string, TruthValue>> values;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const Proposition p{graph.vertices[i].label, graph.subspaces[i]};
    values.emplace_back(p.name, evaluate(input, p));
  }
  return annotate(std::move(graph), values);
}

HasseGraph without_trivials(const HasseGraph& graph, double tol) {
  HasseGraph out;
  out.title = graph.title;
  for (std::size_t i = 0; i < graph.subspaces.size(); ++i) {
    const Subspace& s = graph.subspaces[i];
    if (s.is_zero() || s.is_full()) continue;
    out.subspaces.push_back(s);
    out.vertices.push_back(graph.vertices[i]);
  }
  out.edges = covering_relation(out.subspaces, tol);
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string node_attributes(Marker m) {
  switch (m) {
    case Marker::TrueSquare: return "shape=square, style=filled, fillcolor=black";
    case Marker::FalseCircle: return "shape=circle, style=filled, fillcolor=black";
    case Marker::GapHollow: return "shape=circle, style=solid, fillcolor=white";
    case Marker::Unvalued: return "shape=circle, style=dashed";
  }
  return "";
}

void emit_graph(std::ostringstream& os, const HasseGraph& g, std::size_t gi, bool clustered,
                const DotOptions& options) {
  const std::string indent = clustered ? "    " : "  ";
  auto node_id = [gi](std::size_t vi) { return "g" + std::to_string(gi) + "_v" + std::to_string(vi); };

  if (clustered) {
    os << "  subgraph cluster_" << gi << " {\n";
    os << indent << "label=" << quoted(g.title) << ";\n";
  }

  // Nodes belonging to exactly one block may be grouped by block.
  std::map<std::string, std::vector<std::size_t>> by_block;
  std::vector<std::size_t> loose;
  for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
    if (options.cluster_blocks && g.vertices[vi].blocks.size() == 1) {
      by_block[g.vertices[vi].blocks.front()].push_back(vi);
    } else {
      loose.push_back(vi);
    }
  }
  auto emit_node = [&](std::size_t vi, const std::string& ind) {
    const HasseVertex& v = g.vertices[vi];
    const std::string label = options.dimension_labels
                                  ? "dim-" + std::to_string(g.subspaces[vi].dim()) + " #" + std::to_string(vi)
                                  : v.label;
    os << ind << node_id(vi) << " [" << node_attributes(v.marker) << ", xlabel=" << quoted(label)
       << ", comment=" << quoted(std::string(to_string(v.marker))) << "];\n";
  };
  for (std::size_t vi : loose) emit_node(vi, indent);
  std::size_t bi = 0;
  for (const auto& [block, members] : by_block) {
    os << indent << "subgraph cluster_" << gi << "_b" << bi++ << " {\n";
    os << indent << "  label=" << quoted(block) << ";\n";
    for (std::size_t vi : members) emit_node(vi, indent + "  ");
    os << indent << "}\n";
  }

  std::map<Index, std::vector<std::size_t>> ranks;
  for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) ranks[g.subspaces[vi].dim()].push_back(vi);
  for (const auto& [dim, members] : ranks) {
    os << indent << "{ rank=same;";
    for (std::size_t vi : members) os << " " << node_id(vi) << ";";
    os << " }\n";
  }
  for (const auto& [lo, hi] : g.edges) {
    os << indent << node_id(lo) << " -> " << node_id(hi) << ";\n";
  }
  if (clustered) os << "  }\n";
}

}  // namespace

std::string emit_dot(std::span<const HasseGraph> graphs, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph hasse {\n";
  const bool empty = std::all_of(graphs.begin(), graphs.end(),
                                 [](const HasseGraph& g) { return g.vertices.empty(); });
  if (empty) {
    os << "}\n";
    return os.str();
  }
  os << "  rankdir=BT;\n";
  os << "  node [label=\"\", fixedsize=true, width=0.25, height=0.25];\n";
  os << "  edge [dir=none];\n";
  const bool clustered = graphs.size() > 1;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    if (options.include_trivials) {
      emit_graph(os, graphs[gi], gi, clustered, options);
    } else {
      emit_graph(os, without_trivials(graphs[gi]), gi, clustered, options);
    }
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot(const HasseGraph& graph, const DotOptions& options) {
  return emit_dot(std::span<const HasseGraph>(&graph, 1), options);
}

}  // namespace qprop
