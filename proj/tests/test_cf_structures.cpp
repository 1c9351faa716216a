#include "btq/cf_structures.hpp"
#include "btq/transfer.hpp"
#include "btq/verify.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace btq;

namespace {

Rational column_sum(const CFMatrix& m, int v) {
  Rational s = 0;
  for (const auto& [y, val] : m.column(VRef::core(v))) s += val;
  return s;
}

// Path 0 - 1 - ... - (n-1), weight 1 away from 0 and 2 towards it, a half
// edge pair at 0.  Column = source.
QMatrix half_line(int n) {
  QMatrix m(n, n);
  m(0, 0) = 2;
  for (int i = 0; i + 1 < n; ++i) {
    m(i + 1, i) = 1;
    m(i, i + 1) = 2;
  }
  return m;
}

}  // namespace

TEST_CASE("neighbourhood matrices") {
  SUBCASE("row t^2 of the Eichler table") {
    CFMatrix m = to_matrix(fixture("table3-t2"));
    CHECK(m.core_block.rows() == 5);
    for (int v = 0; v < 5; ++v) CHECK(column_sum(m, v) == 3);
  }
  SUBCASE("single vertex with q+1 half edges") {
    WCFG w = make_wcfg({"v"}, {{{0, 0}, Rational(4)}}, {});
    CFMatrix m = to_matrix(w);
    REQUIRE(m.core_block.rows() == 1);
    CHECK(m.core_block(0, 0) == 4);
    CHECK(w.core.g.num_vertices == 2);
    CHECK(w.core.has_half_edge(0));
  }
  SUBCASE("elliptic graph, column n1") {
    WCFG w = fixture("fig21a");
    CFMatrix m = to_matrix(w);
    auto col = m.column(VRef::core(vid(w, "n1")));
    REQUIRE(col.size() == 1);
    CHECK(col[0].first == VRef::core(vid(w, "m1")));
    CHECK(col[0].second == 3);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_WITH_AS(make_wcfg({"v", "w"}, {{{0, 1}, Rational(1)}}, {}), doctest::Contains("non-graphic"),
                       std::invalid_argument);
  CuspDescriptor c;
  c.attach = 0;
  c.inward = 0;
  CHECK_THROWS(make_wcfg({"v"}, {}, {c}));
  WCFG neg = make_wcfg({"v", "w"}, {{{0, 1}, Rational(-1)}, {{1, 0}, Rational(1)}}, {});
  CHECK_FALSE(neg.regular());
  CHECK(fixture("fig21a").regular());
}

TEST_CASE("normalization") {
  CuspDescriptor c;
  c.attach = 0;
  c.attach_weight = 3;
  c.inward = 3;
  c.outward = 1;
  CFMatrix m = to_matrix(make_wcfg({"v"}, {}, {c}));
  CFMatrix t = normalize(m);
  CHECK(t.cusps[0].inward == Rational(3, 4));
  CHECK(t.cusps[0].outward == Rational(1, 4));
  CHECK(t.cusps[0].attach_weight == 1);
  CFMatrix tt = normalize(t);
  CHECK(tt.core_block == t.core_block);
  CHECK(tt.cusps == t.cusps);
  CFMatrix n3 = normalize(to_matrix(fixture("table3-t-q2")));
  for (int v = 0; v < n3.num_core(); ++v) CHECK(column_sum(n3, v) == 1);
}

TEST_CASE("operators on charges") {
  CuspDescriptor c;
  c.attach = 0;
  c.inward = 5;
  c.outward = 1;
  CFMatrix m = to_matrix(make_wcfg({"v"}, {}, {c}));
  Charge img = apply_operator(m, delta(VRef{0, 4}));
  CHECK(img == Charge{{VRef{0, 3}, Rational(5)}, {VRef{0, 5}, Rational(1)}});
  CHECK(apply_operator(m, Charge{}).empty());

  // N^3 on delta_c of the t^2 row.
  CFMatrix t2 = to_matrix(fixture("table3-t2"));
  Charge mu = delta(*resolve_name(t2, "c"));
  for (int i = 0; i < 3; ++i) mu = apply_operator(t2, mu);
  std::map<std::string, Rational> got;
  for (const auto& [x, val] : mu) got[t2.name(x)] = val;
  CHECK(got == std::map<std::string, Rational>{{"d1", 8}, {"u1", 16}, {"d3", 1}, {"u3", 2}});
}

TEST_CASE("cusp detection") {
  SUBCASE("alternating path") {
    QMatrix m = half_line(7);
    DetectedCusps d = detect_cusps(m, {6});
    CHECK(d.core == std::vector<int>{0});
    REQUIRE(d.cusps.size() == 1);
    CHECK(d.cusps[0].inward == 2);
    CHECK(d.cusps[0].outward == 1);
    CHECK(d.cusps[0].attach_weight == 1);
    CHECK(d.non_canonical.empty());
  }
  SUBCASE("cycle") {
    Graph c5 = cycle_graph(5);
    QMatrix m(5, 5);
    for (int e = 0; e < c5.num_edges(); ++e) m(c5.tgt[e], c5.src[e]) = 1;
    DetectedCusps d = detect_cusps(m, {});
    CHECK(d.cusps.empty());
    CHECK(d.core.size() == 5);
  }
  SUBCASE("wrong pattern") {
    DetectedCusps d = detect_cusps(half_line(5), {4}, std::make_pair(Rational(3), Rational(1)));
    CHECK(d.cusps.empty());
    CHECK(d.non_canonical == std::vector<int>{4});
  }
  SUBCASE("transferred t^2 row has six cusps") {
    TransferReport r = assemble_candidate(fixture("table3-t2"), 3);
    WCFG w = canonicalize(from_matrix(r.candidate));
    CHECK(w.cusps.size() == 6);
    for (const auto& c : w.cusps) {
      CHECK(c.inward == 8);
      CHECK(c.outward == 1);
    }
  }
}

TEST_CASE("canonical forms") {
  WCFG w = fixture("table3-t2");
  WCFG c = canonicalize(w);
  // Two cusps growing towards each other meet at c.
  CHECK(c.num_core() == 1);
  CHECK(c.name(0) == "c");
  CHECK(canonicalize(c).num_core() == 1);
  CHECK(equivalent(w, c));
  CHECK(equivalent(fixture("table3-t-q2"), fixture("table3-t-q2")));
  CHECK_FALSE(equivalent(fixture("table3-t-q2"), fixture("table3-t-q3")));
  CHECK_FALSE(equivalent(fixture("table3-tt1"), fixture("table3-t2t1")));
}
