// Graphs with a reversal involution, fine graphs, finite group actions and
// their fine quotients.
#pragma once

#include "btq/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace btq {

// Vertices are 0..num_vertices-1, edges 0..num_edges()-1.  Every edge a has a
// reverse rev[a] != a with src[rev[a]] == tgt[a].
struct Graph {
  int num_vertices = 0;
  std::vector<int> src, tgt, rev;
  std::vector<std::string> labels;  // empty, or one per vertex

  int num_edges() const { return static_cast<int>(src.size()); }
  int add_vertex(const std::string& label = "");
  // Adds the pair a: u->v, rev(a): v->u. Returns a.
  int add_edge(int u, int v);
  std::vector<std::vector<int>> out_edges() const;
  std::string label(int v) const;
  void validate() const;
};

enum class Kind : std::uint8_t { Actual, Virtual };

struct FineGraph {
  Graph g;
  std::vector<Kind> kind;

  bool is_actual(int v) const { return kind[v] == Kind::Actual; }
  std::vector<int> actual_vertices() const;
  int valency(int v) const;
  // Neighbour multiset of an actual vertex through its virtual vertices: a
  // valency-1 virtual vertex (half edge) yields v itself once, a loop twice.
  std::vector<int> actual_neighbours(int v) const;
  bool has_half_edge(int v) const;
  void validate() const;
};

using Perm = std::vector<int>;

// A finite group given by its multiplication table, acting on a graph.
struct GroupAction {
  std::vector<std::vector<int>> table;  // table[g][h] = g*h
  int identity = 0;
  std::vector<Perm> vperm, eperm;  // per element

  int order() const { return static_cast<int>(table.size()); }
  // Throws std::invalid_argument if the table is not a group or the
  // permutations do not respect src/tgt/rev and the table.
  void validate(const Graph& g) const;

  static GroupAction trivial(const Graph& g);
  // Closure of the given (vertex perm, edge perm) generators.
  static GroupAction generate(const Graph& g, const std::vector<std::pair<Perm, Perm>>& gens);
};

// Edge permutation induced by a vertex permutation of a graph whose pairs of
// vertices are joined by at most one edge pair and which has no loops.
Perm induced_edge_perm(const Graph& g, const Perm& vperm);

FineGraph barycentric_subdivision(const Graph& g);
// The action on the subdivision induced by an action on g.
GroupAction subdivided_action(const Graph& g, const GroupAction& act);

struct FineQuotient {
  FineGraph fg;
  std::vector<int> vertex_class;  // vertex of the input fine graph -> quotient vertex
  std::vector<int> edge_class;
};

// Orbit graph of a fine graph under an action preserving kinds (such an
// action has no inversions).
FineQuotient orbit_quotient(const FineGraph& fg, const GroupAction& act);
// Quotient of the barycentric subdivision by the induced action.  Vertex
// classes refer to vertices of g; virtual classes for edge pairs are omitted.
FineQuotient fine_quotient(const Graph& g, const GroupAction& act);

using WeightMap = std::map<std::pair<int, int>, Rational>;

// m_{v,w} over quotient actual vertex ids; every preimage is checked.
WeightMap quotient_weights(const Graph& g, const GroupAction& act);
WeightMap quotient_weights(const FineGraph& fg, const GroupAction& act, const FineQuotient& fq);

// Merges parallel virtual vertices; loops and repeated half edges at a vertex
// become a single half edge.
FineGraph reduce_fine_graph(const FineGraph& fg);

// Backtracking isomorphism of weighted digraphs given as square matrices with
// vertex colours.  Returns the bijection i -> image(i).
std::optional<std::vector<int>> find_isomorphism(const std::vector<std::vector<Rational>>& a,
                                                 const std::vector<std::vector<Rational>>& b,
                                                 const std::vector<int>& colour_a = {},
                                                 const std::vector<int>& colour_b = {});

// Edge-count matrices; a loop counts twice.  Rejects more than 64 vertices.
std::optional<std::vector<int>> is_isomorphic(const Graph& g1, const Graph& g2);

// Small named graphs used as targets.
Graph complete_bipartite(int m, int n);
Graph cube_graph();
Graph petersen_graph();
Graph prism_graph(int n);
Graph cycle_graph(int n);

}  // namespace btq
