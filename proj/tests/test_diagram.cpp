#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qprop/builtin.hpp"
#include "qprop/commands.hpp"
#include "qprop/diagram.hpp"

using namespace qprop;

namespace {

using EdgeNames = std::set<std::pair<std::string, std::string>>;

EdgeNames edge_names(const HasseGraph& g) {
  EdgeNames out;
  for (const auto& [lo, hi] : g.edges) out.emplace(g.vertices[lo].label, g.vertices[hi].label);
  return out;
}

std::map<std::string, Marker> markers(const HasseGraph& g) {
  std::map<std::string, Marker> out;
  for (const auto& v : g.vertices) out[v.label] = v.marker;
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("covering relation of a Boolean lattice is the hypercube") {
  oracle::Rng rng(51);
  for (Index n = 2; n <= 4; ++n) {
    const Context ctx = oracle::random_context(n + 1, n, rng);
    const auto elements = lattice_of(ctx).elements();
    const auto edges = covering_relation(elements);
    // Mask i covers j iff they differ by exactly one atom.
    std::set<Edge> expected;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (std::size_t j = 0; j < elements.size(); ++j) {
        if ((i & j) == i && __builtin_popcountll(i ^ j) == 1) expected.emplace(i, j);
      }
    }
    CHECK(std::set<Edge>(edges.begin(), edges.end()) == expected);
  }
}

TEST_CASE("covering relation on a chain and on duplicates") {
  const std::vector<Subspace> chain{Subspace::full(3), Subspace::zero(3),
                                    Subspace::from_orthonormal(ComplexMatrix::Identity(3, 1)),
                                    Subspace::from_orthonormal(ComplexMatrix::Identity(3, 2))};
  const auto edges = covering_relation(chain);
  CHECK(std::set<Edge>(edges.begin(), edges.end()) == std::set<Edge>{{1, 2}, {2, 3}, {3, 0}});
  const std::vector<Subspace> dup{Subspace::zero(2), Subspace::zero(2)};
  CHECK_THROWS_AS(covering_relation(dup), Error);
}

TEST_CASE("intro diagram markers") {
  const Scenario sc = intro_scenario();
  const auto graphs = scenario_graphs(sc, kDefaultEps);
  REQUIRE(graphs.size() == 2);
  const EdgeNames square{{"{0}", "P_z+"}, {"{0}", "P_z-"}, {"P_z+", "H"}, {"P_z-", "H"}};
  CHECK(edge_names(graphs[0]) == square);
  CHECK(markers(graphs[0]) == std::map<std::string, Marker>{{"{0}", Marker::FalseCircle},
                                                            {"P_z+", Marker::TrueSquare},
                                                            {"P_z-", Marker::FalseCircle},
                                                            {"H", Marker::TrueSquare}});
  CHECK(markers(graphs[1]).at("P_x+") == Marker::GapHollow);
  CHECK(markers(graphs[1]).at("P_x-") == Marker::GapHollow);
}

TEST_CASE("environment diagram is the 16-element block of the spliced context") {
  const Scenario sc = environment_scenario();
  const auto graphs = scenario_graphs(sc, kDefaultEps);
  REQUIRE(graphs.size() == 1);
  const HasseGraph& g = graphs.front();
  CHECK(g.vertices.size() == 16);
  CHECK(g.edges.size() == 32);
  const auto m = markers(g);
  CHECK(m.at("P_Sz+∧P_1z-") == Marker::TrueSquare);
  CHECK(m.at("P_Sx+∧P_1z+") == Marker::FalseCircle);
  CHECK(m.at("P_1z-") == Marker::TrueSquare);
  CHECK(m.at("P_1z+") == Marker::FalseCircle);
  for (const auto& v : g.vertices) CHECK(v.marker != Marker::GapHollow);
}

TEST_CASE("annotation by label") {
  HasseGraph g = lattice_graph(lattice_of(spin_context(Axis::Z)), {});
  const std::vector<std::pair<std::string, TruthValue>> vals{{"H", TruthValue::True}};
  g = annotate(g, vals);
  CHECK(g.vertices[g.index_of("H")].marker == Marker::TrueSquare);
  CHECK(g.vertices[g.index_of("{0}")].marker == Marker::Unvalued);
  const std::vector<std::pair<std::string, TruthValue>> bad{{"nope", TruthValue::True}};
  CHECK_THROWS_AS(annotate(g, bad), Error);
}

TEST_CASE("dropping trivial vertices re-reduces the edges") {
  const HasseGraph g = lattice_graph(lattice_of(build_sigma_A()), {});
  const HasseGraph t = without_trivials(g);
  CHECK(t.vertices.size() == 14);
  // Atoms and coatoms lose their edges to {0} and H; 32 - 4 - 4 remain.
  CHECK(t.edges.size() == 24);
  for (const auto& [lo, hi] : t.edges) CHECK(t.subspaces[lo].dim() + 1 == t.subspaces[hi].dim());
}

TEST_CASE("DOT output") {
  CHECK(emit_dot(std::vector<HasseGraph>{}) == "digraph hasse {\n}\n");
  const Scenario sc = intro_scenario();
  const auto graphs = scenario_graphs(sc, kDefaultEps);
  const std::string dot = emit_dot(graphs);
  CHECK(dot == emit_dot(graphs));
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("subgraph cluster_1") != std::string::npos);
  CHECK(dot == slurp(std::string(QPROP_TEST_DIR) + "/golden/intro.dot"));

  DotOptions no_trivials;
  no_trivials.include_trivials = false;
  const std::string small = emit_dot(graphs, no_trivials);
  CHECK(small.find("\"{0}\"") == std::string::npos);
  CHECK(small.find("->") == std::string::npos);

  DotOptions clustered;
  clustered.cluster_blocks = true;
  clustered.dimension_labels = true;
  const std::string c = emit_dot(sublattice_graph(paste_sublattice(sc.collection({})), sc.propositions), clustered);
  CHECK(c.find("label=\"Sigma_x\"") != std::string::npos);
  CHECK(c.find("dim-1 #1") != std::string::npos);
}
