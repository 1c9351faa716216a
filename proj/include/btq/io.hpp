// JSON documents for weighted CF graphs and DOT rendering.
#pragma once

#include "btq/cf_structures.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace btq {

// Malformed text (line and column set) or a document that does not describe
// a valid graph (pointer set to the offending JSON location when known).
class DocumentError : public std::runtime_error {
public:
  DocumentError(const std::string& what, int line = 0, int column = 0, std::string pointer = "")
      : std::runtime_error(what), line(line), column(column), pointer(std::move(pointer)) {}
  int line, column;
  std::string pointer;
};

struct WcfgDocument {
  WCFG graph;
  std::string source;                                 // document-level citation
  std::map<std::pair<int, int>, std::string> weight_sources;
  std::vector<std::string> cusp_sources;              // empty or one per cusp
  std::map<int, std::string> labels;                  // display labels of core vertices
};

// Accepted layout:
//   { "version": 1, "q"?: int, "source"?: str,
//     "vertices": [{"id", "kind": "actual"|"virtual", "label"?}],
//     "edges"?: [{"src", "tgt"}],
//     "weights": [{"from", "to", "value": "p/q", "source"?}],
//     "cusps"?: [{"attach": id|null, "inward", "outward", "attach_weight"?,
//                 "label_scheme"?, "label_offset"?, "label_step"?, "source"?}] }
// Without edges and virtual vertices the core is rebuilt from the weights.
// A null attach on an empty core adds a root vertex "v0" for a pure cusp.
WcfgDocument parse_document(const std::string& text);
std::string emit_document(const WcfgDocument& doc);

WCFG parse_wcfg(const std::string& text);
std::string emit_wcfg(const WCFG& w);
WCFG load_wcfg(const std::string& path);
WcfgDocument load_document(const std::string& path);

// digraph with undirected edges; weights are edge-end labels.
std::string export_dot(const WCFG& w, const std::string& graph_name = "wcfg");

std::string matrix_csv(const CFMatrix& m);

}  // namespace btq
