#include "btq/congruence.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace btq;

namespace {

CongruenceQuotient build(int q, const char* f, int depth) {
  return congruence_quotient(q, Poly::parse(Fq::get(q), f), depth);
}

}  // namespace

TEST_CASE("finite matrix groups") {
  const Fq& f = Fq::get(2);
  auto r = std::make_shared<const QuotientRing>(f, Poly::t(f));
  CHECK(r->size() == 2);
  CHECK(stabilizer_image(r, 0).order() == 6);
  CongruenceQuotient cq = build(2, "t(t+1)", 3);
  CHECK(cq.gbar->order() == 36);
  CHECK(static_cast<int>(cq.stab[0].size()) == 6);
  CHECK(cq.layer_count(0) == 6);
  CHECK(build(2, "t^3", 4).gbar->order() == 384);
  // Group axioms on the image.
  const auto& g = *cq.gbar;
  for (int i = 0; i < g.order(); i += 5) {
    CHECK(g.mul(i, g.inv(i)) == g.identity());
    for (int j = 0; j < g.order(); j += 7) CHECK(g.mul(g.mul(i, j), g.inv(j)) == i);
  }
}

TEST_CASE("quotient ring arithmetic") {
  const Fq& f = Fq::get(3);
  QuotientRing r(f, Poly::parse(f, "t^2+1"));
  CHECK(r.size() == 9);
  // t^2+1 is irreducible over F_3, so R is a field.
  for (int a = 1; a < 9; ++a) CHECK(r.mul(a, r.inv(a)) == r.reduce(Poly::constant(f, 1)));
  QuotientRing s(f, Poly::parse(f, "t^2+2t+1"));
  CHECK(s.inv(s.reduce(Poly::parse(f, "t+1"))) == -1);
}

TEST_CASE("linear level: q+1 cusps at one vertex") {
  for (int q = 2; q <= 5; ++q) {
    WCFG w = to_wcfg(truncated(build(q, "t", 3)));
    INFO(q);
    CHECK(w.num_core() == 1);
    CHECK(w.cusps.size() == static_cast<std::size_t>(q + 1));
    for (const auto& c : w.cusps) {
      CHECK(c.attach == 0);
      CHECK(c.inward == q);
      CHECK(c.outward == 1);
    }
  }
}

TEST_CASE("quadratic levels over F_2") {
  struct Row {
    const char* f;
    Graph target;
    int type0;
  };
  for (const Row& row : {Row{"t(t+1)", complete_bipartite(3, 3), 6}, Row{"t^2", cube_graph(), 8},
                         Row{"t^2+t+1", petersen_graph(), 10}}) {
    INFO(row.f);
    CongruenceQuotient cq = build(2, row.f, 4);
    CHECK(cq.layer_count(0) == row.type0);
    Graph o = o_graph(cq);
    CHECK(is_isomorphic(o, row.target).has_value());
    std::vector<std::string> why;
    CHECK(layer_identities_hold(cq, &why));
    // Valency conservation on complete vertices.
    std::map<int, Rational> sums;
    for (const auto& [k, v] : cq.weights()) sums[k.first] += v;
    for (int v = 0; v < cq.num_vertices(); ++v)
      if (cq.complete(v)) CHECK(sums[v] == 3);
  }
  CHECK_FALSE(is_isomorphic(o_graph(build(2, "t^2", 4)), petersen_graph()).has_value());
}

TEST_CASE("layer identities on other levels") {
  for (auto [q, f] : std::vector<std::pair<int, const char*>>{{3, "t"}, {2, "t^2+1"}, {2, "t^3"}, {2, "t^3+t+1"}, {4, "t"}, {5, "t+1"}}) {
    INFO(f);
    std::vector<std::string> why;
    CHECK(layer_identities_hold(build(q, f, std::max(3, Poly::parse(Fq::get(q), f).deg() + 2)), &why));
  }
  CHECK_THROWS(build(7, "t", 3));
  CHECK_THROWS(build(2, "t^2", 2));
}

TEST_CASE("the geodesic of a = (t 1; 1 0) closes into a 2r-cycle") {
  const Fq& f = Fq::get(2);
  Mat2P a{Poly::t(f), Poly::constant(f, 1), Poly::constant(f, 1), Poly::zero(f)};
  for (const char* fs : {"t(t+1)", "t^2", "t^2+t+1"}) {
    INFO(fs);
    CongruenceQuotient cq = build(2, fs, 4);
    const auto& g = *cq.gbar;
    int ia = g.index_of(a), r = 1;
    for (int p = ia; p != g.identity(); p = g.mul(p, ia)) ++r;
    // A vertex on the axis is moved by exactly two.
    std::optional<BallVertex> v0;
    std::vector<BallVertex> frontier{BallVertex::ray(f, 0)};
    std::set<BallVertex> seen(frontier.begin(), frontier.end());
    for (int depth = 0; depth < 4 && !v0; ++depth) {
      std::vector<BallVertex> next;
      for (const auto& x : frontier) {
        if (tree_distance(x, moebius_act(a, x)) == 2) {
          v0 = x;
          break;
        }
        for (const auto& y : neighbors(x))
          if (seen.insert(y).second) next.push_back(y);
      }
      frontier = next;
    }
    REQUIRE(v0.has_value());
    BallVertex v2 = moebius_act(a, *v0);
    std::optional<BallVertex> mid;
    for (const auto& y : neighbors(*v0))
      if (tree_distance(y, v2) == 1) mid = y;
    REQUIRE(mid.has_value());
    std::vector<int> cycle;
    BallVertex x = *v0, m = *mid;
    for (int k = 0; k < r; ++k) {
      cycle.push_back(cq.locate(x));
      cycle.push_back(cq.locate(m));
      x = moebius_act(a, x);
      m = moebius_act(a, m);
    }
    CHECK(cq.locate(x) == cycle[0]);
    std::set<int> distinct(cycle.begin(), cycle.end());
    CHECK(distinct.size() == cycle.size());
    for (int v : cycle) {
      REQUIRE(v >= 0);
      CHECK(cq.type[v] <= 1);
    }
  }
}

TEST_CASE("overgroup quotients") {
  for (int q = 2; q <= 3; ++q) {
    CongruenceQuotient cq = build(q, "t", 3);
    WCFG g0 = quotient_by_overgroup(cq, gamma0_generators(cq));
    CHECK(equivalent(g0, fixture("table2-t-q" + std::to_string(q))));
  }
  CongruenceQuotient cq = build(2, "t(t+1)", 4);
  auto gens = gamma0_generators(cq);
  CHECK(equivalent(quotient_by_overgroup(cq, gens), fixture("table2-tt1")));
  for (const auto& x : atkin_lehner_generators(Fq::get(2), cq.f)) gens.push_back(x);
  CHECK(equivalent(quotient_by_overgroup(cq, gens), fixture("table3-tt1")));
}
