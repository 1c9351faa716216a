#include "btq/io.hpp"
#include "btq/transfer.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace btq;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::string error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const DocumentError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("documents") {
  WcfgDocument d = load_document(fixture_path("table3-t2"));
  CHECK(d.graph.num_core() == 5);
  CHECK(d.graph.cusps.size() == 2);
  CHECK(d.graph.q == 2);
  CHECK_FALSE(d.source.empty());

  SUBCASE("round trip") {
    for (const char* f : {"table3-t2", "fig21a", "fig19", "table2-tt1"}) {
      WCFG w = fixture(f);
      std::string text = emit_wcfg(w);
      WCFG back = parse_wcfg(text);
      CHECK(equivalent(w, back));
      CHECK(emit_wcfg(back) == text);
      CHECK(to_matrix(back).core_block == to_matrix(w).core_block);
    }
  }
  SUBCASE("pure cusp") {
    WCFG w = parse_wcfg(R"({"version": 1, "q": 2, "vertices": [], "weights": [],
      "cusps": [{"attach": null, "inward": "2", "outward": "1"}]})");
    CHECK(w.num_core() == 1);
    CHECK(w.name(0) == "v0");
    CHECK(w.cusps.size() == 1);
  }
}

TEST_CASE("document errors") {
  CHECK(error_of(R"({"version": 1, "vertices": [{"id": "v", "kind": "actual"}, {"id": "w", "kind": "actual"}],
    "weights": [{"from": "v", "to": "w", "value": "1"}]})").find("non-graphic") != std::string::npos);
  std::string e = error_of(R"({"version": 1, "vertices": [{"id": "v", "kind": "actual", "colour": 3}], "weights": []})");
  CHECK(e.find("/vertices/0") != std::string::npos);
  CHECK(e.find("colour") != std::string::npos);
  try {
    parse_document("{\n  \"version\": 1,\n  \"q\": ]\n}");
    FAIL("no error");
  } catch (const DocumentError& err) {
    CHECK(err.line == 3);
    CHECK(err.column > 0);
  }
  CHECK_FALSE(error_of(R"({"version": 1, "vertices": [], "weights": [{"from": "a", "to": "b", "value": "1"}]})").empty());
  CHECK_FALSE(error_of(R"({"version": 1, "vertices": [{"id": "v", "kind": "actual"}],
    "weights": [{"from": "v", "to": "v", "value": "x"}]})").empty());
  CHECK_THROWS_AS(load_wcfg("/nonexistent/graph.json"), DocumentError);
}

TEST_CASE("DOT export") {
  std::string t = export_dot(fixture("table3-t-q2"));
  CHECK(count(t, "\"v:") >= 3);
  CHECK(count(t, "label=\"*\"") == 1);
  CHECK(count(t, "label=\"...\"") == 1);
  CHECK(t.rfind("digraph", 0) == 0);

  std::string empty = export_dot(make_wcfg({}, {}, {}));
  CHECK(empty.rfind("digraph", 0) == 0);
  CHECK(empty.find('}') != std::string::npos);

  TransferReport r = assemble_candidate(fixture("table3-t2"), 3);
  WCFG w = from_matrix(r.candidate);
  std::string d = export_dot(w);
  CHECK(count(d, "label=\"...\"") == 6);
  CHECK(w.num_core() == 7);
  CHECK(count(d, " [label=") == 7);
}

TEST_CASE("CSV") {
  std::string csv = matrix_csv(to_matrix(fixture("table3-t-q2")));
  CHECK(csv.rfind("to\\from,d1,d2,d3\n", 0) == 0);
  CHECK(csv.find("d1,2,2,0") != std::string::npos);
  CHECK(csv.find("# cusp 0 attach=d3") != std::string::npos);
}
