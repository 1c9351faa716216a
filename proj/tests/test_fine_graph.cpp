#include "btq/cf_structures.hpp"
#include "btq/fine_graph.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace btq;

namespace {

Graph single_edge() {
  Graph g;
  g.add_vertex("v");
  g.add_vertex("w");
  g.add_edge(0, 1);
  return g;
}

// Ball of radius 2 in the 3-regular tree: center 0, middle 1..3, leaves 4..9.
Graph ball3() {
  Graph g;
  for (int i = 0; i < 10; ++i) g.add_vertex("x" + std::to_string(i));
  for (int m = 1; m <= 3; ++m) {
    g.add_edge(0, m);
    g.add_edge(m, 2 + 2 * m);
    g.add_edge(m, 3 + 2 * m);
  }
  return g;
}

std::map<std::pair<int, int>, int> as_ints(const WeightMap& w) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& [k, v] : w) out[k] = static_cast<int>(v.get_num().get_si());
  return out;
}

// Quotient weights keyed by original-vertex orbits, for comparison with the oracle.
std::map<std::pair<int, int>, int> weights_by_orbit(const Graph& g, const GroupAction& act,
                                                    const oracle::OrbitCount& oc) {
  FineQuotient fq = fine_quotient(g, act);
  std::map<int, int> orbit_of_class;
  for (int v = 0; v < g.num_vertices; ++v) orbit_of_class[fq.vertex_class[v]] = oc.orbit_of[v];
  std::map<std::pair<int, int>, int> out;
  for (const auto& [k, v] : as_ints(quotient_weights(g, act)))
    out[{orbit_of_class.at(k.first), orbit_of_class.at(k.second)}] = v;
  return out;
}

}  // namespace

TEST_CASE("graph invariants are enforced") {
  Graph g = single_edge();
  CHECK_NOTHROW(g.validate());
  CHECK(g.rev[0] == 1);
  CHECK(g.src[1] == g.tgt[0]);
  g.rev[0] = 0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("barycentric subdivision") {
  SUBCASE("single edge") {
    FineGraph fg = barycentric_subdivision(single_edge());
    CHECK(fg.g.num_vertices == 3);
    CHECK(fg.g.num_edges() == 4);
    CHECK(fg.actual_vertices().size() == 2);
    CHECK_NOTHROW(fg.validate());
  }
  SUBCASE("loop") {
    Graph g;
    g.add_vertex("v");
    g.add_edge(0, 0);
    FineGraph fg = barycentric_subdivision(g);
    REQUIRE(fg.g.num_vertices == 2);
    int m = fg.is_actual(0) ? 1 : 0;
    int to_m = 0;
    for (int e = 0; e < fg.g.num_edges(); ++e)
      if (!fg.is_actual(fg.g.tgt[e])) {
        ++to_m;
        CHECK(fg.g.tgt[e] == m);
      }
    CHECK(to_m == 2);
    CHECK(fg.actual_neighbours(1 - m) == std::vector<int>{1 - m, 1 - m});
  }
  SUBCASE("a 3-cycle becomes a 6-cycle") {
    FineGraph fg = barycentric_subdivision(cycle_graph(3));
    CHECK(fg.g.num_vertices == 6);
    CHECK(is_isomorphic(fg.g, cycle_graph(6)).has_value());
    for (int v = 0; v < 6; ++v) CHECK(fg.valency(v) == 2);
  }
}

TEST_CASE("fine quotients") {
  SUBCASE("an inversion leaves a half edge") {
    Graph g = single_edge();
    GroupAction act = GroupAction::generate(g, {{{1, 0}, {1, 0}}});
    CHECK(act.order() == 2);
    FineQuotient fq = fine_quotient(g, act);
    CHECK(fq.fg.actual_vertices().size() == 1);
    CHECK(fq.fg.g.num_vertices == 2);
    CHECK(fq.fg.has_half_edge(fq.vertex_class[0]));
    WeightMap w = quotient_weights(g, act);
    REQUIRE(w.size() == 1);
    CHECK(w.begin()->second == 1);
  }
  SUBCASE("trivial group") {
    Graph g = petersen_graph();
    FineQuotient fq = fine_quotient(g, GroupAction::trivial(g));
    CHECK(is_isomorphic(fq.fg.g, barycentric_subdivision(g).g).has_value());
  }
  SUBCASE("a loop counts twice") {
    Graph g;
    g.add_vertex("v");
    g.add_edge(0, 0);
    WeightMap w = quotient_weights(g, GroupAction::trivial(g));
    CHECK(w.at({0, 0}) == 2);
  }
  SUBCASE("rotating the branches of a ball") {
    Graph g = ball3();
    Perm rot{0, 2, 3, 1, 6, 7, 8, 9, 4, 5};
    GroupAction act = GroupAction::generate(g, {{rot, induced_edge_perm(g, rot)}});
    CHECK(act.order() == 3);
    auto oc = oracle::orbit_weights(g, {rot});
    auto got = weights_by_orbit(g, act, oc);
    CHECK(got == oc.weights);
    int center = oc.orbit_of[0], branch = oc.orbit_of[1];
    CHECK(got.at({center, branch}) == 3);
    CHECK(got.at({branch, center}) == 1);
  }
  SUBCASE("a non-automorphism is rejected") {
    // A rotation of the vertices of a path is not an automorphism.
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    CHECK_THROWS(GroupAction::generate(g, {{{1, 2, 0}, {0, 1, 2, 3}}}));
  }
}

TEST_CASE("quotient weights agree with orbit counting on random actions") {
  // Automorphisms of the cube and of K_{3,3} given by coordinate and side permutations.
  std::mt19937 rng(7);
  Graph cube = cube_graph();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> coords{0, 1, 2};
    std::shuffle(coords.begin(), coords.end(), rng);
    int flip = static_cast<int>(rng() % 8);
    Perm p(8);
    for (int v = 0; v < 8; ++v) {
      int img = 0;
      for (int b = 0; b < 3; ++b)
        if ((v >> b) & 1) img |= 1 << coords[b];
      p[v] = img ^ flip;
    }
    std::vector<Perm> gens{p};
    std::vector<std::pair<Perm, Perm>> pairs;
    pairs.push_back({p, induced_edge_perm(cube, p)});
    GroupAction act = GroupAction::generate(cube, pairs);
    CHECK(weights_by_orbit(cube, act, oracle::orbit_weights(cube, gens)) ==
          oracle::orbit_weights(cube, gens).weights);
  }
  Graph k33 = complete_bipartite(3, 3);
  Perm swap_sides{3, 4, 5, 0, 1, 2}, rot{1, 2, 0, 3, 4, 5};
  std::vector<std::pair<Perm, Perm>> pairs{{swap_sides, induced_edge_perm(k33, swap_sides)},
                                           {rot, induced_edge_perm(k33, rot)}};
  GroupAction act = GroupAction::generate(k33, pairs);
  CHECK(act.order() == 18);
  auto oc = oracle::orbit_weights(k33, {swap_sides, rot});
  CHECK(weights_by_orbit(k33, act, oc) == oc.weights);
  // One vertex orbit, 3 neighbours each, all edges inverted by some element.
  CHECK(oc.weights.at({0, 0}) == 3);
}

TEST_CASE("reduction merges parallel virtual vertices") {
  Graph g;
  g.add_vertex("v");
  g.add_vertex("w");
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  FineQuotient fq = fine_quotient(g, GroupAction::trivial(g));
  WCFG w = reduction(fq.fg, quotient_weights(g, GroupAction::trivial(g)));
  CHECK(w.num_core() == 2);
  CHECK(w.core.g.num_vertices == 3);
  CHECK(w.weight(0, 1) == 2);
  CHECK(w.weight(1, 0) == 2);
  // Nothing to merge on a simple graph.
  Graph pg = petersen_graph();
  FineQuotient pq = fine_quotient(pg, GroupAction::trivial(pg));
  CHECK(reduce_fine_graph(pq.fg).g.num_vertices == pq.fg.g.num_vertices);
}

TEST_CASE("isomorphism of small graphs") {
  CHECK_FALSE(is_isomorphic(cube_graph(), petersen_graph()).has_value());
  CHECK_FALSE(is_isomorphic(petersen_graph(), prism_graph(5)).has_value());
  // A relabelled Petersen graph is found, and the witness preserves edges.
  Graph p = petersen_graph();
  std::vector<int> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  Graph q;
  for (int i = 0; i < 10; ++i) q.add_vertex();
  for (int e = 0; e < p.num_edges(); e += 2) q.add_edge(perm[p.src[e]], perm[p.tgt[e]]);
  auto iso = is_isomorphic(p, q);
  REQUIRE(iso.has_value());
  std::set<std::pair<int, int>> eq;
  for (int e = 0; e < q.num_edges(); ++e) eq.insert({q.src[e], q.tgt[e]});
  for (int e = 0; e < p.num_edges(); ++e) CHECK(eq.count({(*iso)[p.src[e]], (*iso)[p.tgt[e]]}) == 1);
}
