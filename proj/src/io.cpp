#include "btq/io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace btq {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

void line_col(const std::string& text, std::size_t byte, int& line, int& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

[[noreturn]] void fail(const std::string& ptr, const std::string& why) { throw DocumentError(ptr + ": " + why, 0, 0, ptr); }

void only_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(ptr, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(ptr + "/" + k, "unknown field '" + k + "'");
  }
}

const json& need(const json& obj, const char* key, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ptr, std::string("missing field '") + key + "'");
  return *it;
}

std::string need_string(const json& obj, const char* key, const std::string& ptr) {
  const json& v = need(obj, key, ptr);
  if (!v.is_string()) fail(ptr + "/" + key, "expected a string");
  return v.get<std::string>();
}

Rational need_rational(const json& obj, const char* key, const std::string& ptr) {
  const json& v = need(obj, key, ptr);
  std::string p = ptr + "/" + key;
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(p, "expected a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(p, e.what());
  }
}

int need_int(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) fail(ptr, "expected an integer");
  return v.get<int>();
}

}  // namespace

WcfgDocument parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line, col;
    line_col(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
    throw DocumentError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col), line,
                        col);
  }
  only_keys(doc, "", {"version", "q", "source", "vertices", "edges", "weights", "cusps"});
  if (need_int(need(doc, "version", ""), "/version") != 1) fail("/version", "unsupported version");

  WcfgDocument out;
  WCFG& w = out.graph;
  if (doc.contains("q")) {
    int q = need_int(doc["q"], "/q");
    if (q < 2) fail("/q", "q must be at least 2");
    w.q = q;
  }
  if (doc.contains("source")) out.source = need_string(doc, "source", "");

  const json& verts = need(doc, "vertices", "");
  if (!verts.is_array()) fail("/vertices", "expected an array");
  std::vector<std::string> actual, virt;
  std::map<std::string, std::string> label_of;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::string p = "/vertices/" + std::to_string(i);
    only_keys(verts[i], p, {"id", "kind", "label"});
    std::string id = need_string(verts[i], "id", p);
    if (id.empty()) fail(p + "/id", "empty id");
    if (!seen.insert(id).second) fail(p + "/id", "duplicate id '" + id + "'");
    std::string kind = need_string(verts[i], "kind", p);
    if (kind == "actual")
      actual.push_back(id);
    else if (kind == "virtual")
      virt.push_back(id);
    else
      fail(p + "/kind", "kind must be \"actual\" or \"virtual\"");
    if (verts[i].contains("label")) {
      if (kind != "actual") fail(p + "/label", "labels are only kept on actual vertices");
      label_of[id] = need_string(verts[i], "label", p);
    }
  }
  std::map<std::string, int> idx;
  for (const auto& id : actual) idx.emplace(id, static_cast<int>(idx.size()));
  const int ncore = static_cast<int>(actual.size());
  auto core_id = [&](const json& v, const std::string& p) {
    if (!v.is_string()) fail(p, "expected a vertex id");
    auto it = idx.find(v.get<std::string>());
    if (it == idx.end() || it->second >= ncore) fail(p, "unknown actual vertex '" + v.get<std::string>() + "'");
    return it->second;
  };

  WeightMap weights;
  const json& wts = need(doc, "weights", "");
  if (!wts.is_array()) fail("/weights", "expected an array");
  for (std::size_t i = 0; i < wts.size(); ++i) {
    std::string p = "/weights/" + std::to_string(i);
    only_keys(wts[i], p, {"from", "to", "value", "source"});
    int a = core_id(need(wts[i], "from", p), p + "/from");
    int b = core_id(need(wts[i], "to", p), p + "/to");
    if (weights.count({a, b})) fail(p, "duplicate weight");
    weights[{a, b}] = need_rational(wts[i], "value", p);
    if (wts[i].contains("source")) out.weight_sources[{a, b}] = need_string(wts[i], "source", p);
  }

  std::vector<CuspDescriptor> cusps;
  bool synth_root = false;
  if (doc.contains("cusps")) {
    const json& cs = doc["cusps"];
    if (!cs.is_array()) fail("/cusps", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string p = "/cusps/" + std::to_string(i);
      only_keys(cs[i], p,
                {"attach", "inward", "outward", "attach_weight", "label_scheme", "label_offset", "label_step", "source"});
      CuspDescriptor c;
      const json& at = need(cs[i], "attach", p);
      if (at.is_null()) {
        if (ncore != 0 || cs.size() != 1) fail(p + "/attach", "a null attach needs an empty core and a single cusp");
        synth_root = true;
        c.attach = 0;
      } else {
        c.attach = core_id(at, p + "/attach");
      }
      c.inward = need_rational(cs[i], "inward", p);
      c.outward = need_rational(cs[i], "outward", p);
      c.attach_weight = cs[i].contains("attach_weight") ? need_rational(cs[i], "attach_weight", p)
                                                        : (synth_root ? c.inward + c.outward : Rational(1));
      if (cs[i].contains("label_scheme")) c.label_scheme = need_string(cs[i], "label_scheme", p);
      if (cs[i].contains("label_offset")) c.label_offset = need_int(cs[i]["label_offset"], p + "/label_offset");
      if (cs[i].contains("label_step")) c.label_step = need_int(cs[i]["label_step"], p + "/label_step");
      if (c.label_step < 1) fail(p + "/label_step", "label_step must be positive");
      cusps.push_back(c);
      out.cusp_sources.push_back(cs[i].contains("source") ? need_string(cs[i], "source", p) : "");
    }
  }
  bool any_source = false;
  for (const auto& s : out.cusp_sources) any_source = any_source || !s.empty();
  if (!any_source) out.cusp_sources.clear();

  std::vector<std::string> names = actual;
  if (synth_root) names.push_back("v0");

  bool explicit_core = doc.contains("edges") || !virt.empty();
  try {
    if (!explicit_core) {
      w = make_wcfg(names, weights, cusps, w.q);
    } else {
      for (const auto& id : virt) idx.emplace(id, static_cast<int>(idx.size()));
      for (const auto& nm : names) {
        w.core.g.add_vertex(nm);
        w.core.kind.push_back(Kind::Actual);
      }
      for (const auto& id : virt) {
        w.core.g.add_vertex(id);
        w.core.kind.push_back(Kind::Virtual);
      }
      const json& es = need(doc, "edges", "");
      if (!es.is_array()) fail("/edges", "expected an array");
      for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = "/edges/" + std::to_string(i);
        only_keys(es[i], p, {"src", "tgt"});
        auto vid = [&](const char* key) {
          const json& v = need(es[i], key, p);
          if (!v.is_string() || !idx.count(v.get<std::string>())) fail(p + "/" + key, "unknown vertex");
          return idx.at(v.get<std::string>());
        };
        int s = vid("src"), t = vid("tgt");
        if (w.core.is_actual(s) == w.core.is_actual(t)) fail(p, "edges must join an actual and a virtual vertex");
        w.core.g.add_edge(s, t);
      }
      for (const auto& [k, val] : weights)
        if (val != 0) w.weights[k] = val;
      w.cusps = cusps;
      w.validate();
    }
  } catch (const DocumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw DocumentError(std::string("invalid graph: ") + e.what());
  }
  for (const auto& [id, lab] : label_of) out.labels[idx.at(id)] = lab;
  return out;
}

std::string emit_document(const WcfgDocument& doc) {
  const WCFG& w = doc.graph;
  w.validate();
  ojson j;
  j["version"] = 1;
  if (w.q) j["q"] = *w.q;
  if (!doc.source.empty()) j["source"] = doc.source;
  const int n = w.num_core();
  std::vector<std::string> id(w.core.g.num_vertices);
  int nv = 0;
  for (int v = 0; v < w.core.g.num_vertices; ++v) id[v] = v < n ? w.name(v) : "*" + std::to_string(nv++);
  j["vertices"] = ojson::array();
  for (int v = 0; v < w.core.g.num_vertices; ++v) {
    ojson x;
    x["id"] = id[v];
    x["kind"] = v < n ? "actual" : "virtual";
    auto it = doc.labels.find(v);
    if (it != doc.labels.end()) x["label"] = it->second;
    j["vertices"].push_back(x);
  }
  j["edges"] = ojson::array();
  const Graph& g = w.core.g;
  for (int a = 0; a < g.num_edges(); ++a) {
    if (!w.core.is_actual(g.src[a])) continue;
    ojson e;
    e["src"] = id[g.src[a]];
    e["tgt"] = id[g.tgt[a]];
    j["edges"].push_back(e);
  }
  j["weights"] = ojson::array();
  for (const auto& [k, val] : w.weights) {
    if (val == 0) continue;
    ojson x;
    x["from"] = id[k.first];
    x["to"] = id[k.second];
    x["value"] = to_string(val);
    auto it = doc.weight_sources.find(k);
    if (it != doc.weight_sources.end()) x["source"] = it->second;
    j["weights"].push_back(x);
  }
  j["cusps"] = ojson::array();
  for (std::size_t i = 0; i < w.cusps.size(); ++i) {
    const auto& c = w.cusps[i];
    ojson x;
    x["attach"] = id[c.attach];
    x["attach_weight"] = to_string(c.attach_weight);
    x["inward"] = to_string(c.inward);
    x["outward"] = to_string(c.outward);
    if (!c.label_scheme.empty()) x["label_scheme"] = c.label_scheme;
    if (c.label_offset != 0) x["label_offset"] = c.label_offset;
    if (c.label_step != 1) x["label_step"] = c.label_step;
    if (i < doc.cusp_sources.size() && !doc.cusp_sources[i].empty()) x["source"] = doc.cusp_sources[i];
    j["cusps"].push_back(x);
  }
  return j.dump(2) + "\n";
}

WCFG parse_wcfg(const std::string& text) { return parse_document(text).graph; }

std::string emit_wcfg(const WCFG& w) {
  WcfgDocument d;
  d.graph = w;
  return emit_document(d);
}

WcfgDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const DocumentError& e) {
    throw DocumentError(path + ": " + e.what(), e.line, e.column, e.pointer);
  }
}

WCFG load_wcfg(const std::string& path) { return load_document(path).graph; }

namespace {

std::string quoted(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') o.push_back('\\');
    o.push_back(c);
  }
  return o + "\"";
}

}  // namespace

std::string export_dot(const WCFG& w, const std::string& graph_name) {
  std::ostringstream o;
  o << "digraph " << quoted(graph_name) << " {\n";
  const int n = w.num_core();
  const Graph& g = w.core.g;
  if (n > 0 || !w.cusps.empty()) o << "  node [shape=circle, style=filled, fillcolor=lightgray];\n";
  for (int v = 0; v < n; ++v) o << "  " << quoted("v:" + w.name(v)) << " [label=" << quoted(w.name(v)) << "];\n";
  auto out = g.out_edges();
  int star = 0;
  // Virtual vertices: valency 1 becomes an asterisk node, valency 2 a plain edge.
  for (int x = n; x < g.num_vertices; ++x) {
    std::vector<int> ends;
    for (int a : out[x]) ends.push_back(g.tgt[a]);
    if (ends.size() == 1) {
      int v = ends[0];
      std::string node = "half:" + std::to_string(star++);
      o << "  " << quoted(node) << " [shape=plaintext, style=\"\", label=\"*\"];\n";
      o << "  " << quoted("v:" + w.name(v)) << " -> " << quoted(node) << " [dir=none, taillabel="
        << quoted(to_string(w.weight(v, v))) << "];\n";
    } else if (ends.size() == 2) {
      int u = ends[0], v = ends[1];
      o << "  " << quoted("v:" + w.name(u)) << " -> " << quoted("v:" + w.name(v)) << " [dir=none, taillabel="
        << quoted(to_string(w.weight(u, v))) << ", headlabel=" << quoted(to_string(w.weight(v, u))) << "];\n";
    }
  }
  CFMatrix m;
  m.cusps = w.cusps;
  for (std::size_t c = 0; c < w.cusps.size(); ++c) {
    const auto& d = w.cusps[c];
    std::string prev = "v:" + w.name(d.attach);
    std::string base = "cusp:" + std::to_string(c) + ":";
    for (int k = 1; k <= 3; ++k) {
      std::string node = base + std::to_string(k);
      o << "  " << quoted(node) << " [style=\"\", label=" << quoted(m.name(VRef{static_cast<int>(c), k})) << "];\n";
      Rational tail = k == 1 ? d.attach_weight : d.outward;
      o << "  " << quoted(prev) << " -> " << quoted(node) << " [dir=none, taillabel=" << quoted(to_string(tail))
        << ", headlabel=" << quoted(to_string(d.inward)) << "];\n";
      prev = node;
    }
    std::string more = base + "more";
    o << "  " << quoted(more) << " [shape=plaintext, style=\"\", label=\"...\"];\n";
    o << "  " << quoted(prev) << " -> " << quoted(more) << " [dir=none, style=dotted, taillabel="
      << quoted(to_string(d.outward)) << "];\n";
  }
  o << "}\n";
  return o.str();
}

std::string matrix_csv(const CFMatrix& m) {
  std::ostringstream o;
  const int n = m.num_core();
  o << "to\\from";
  for (int v = 0; v < n; ++v) o << "," << m.name(VRef::core(v));
  o << "\n";
  for (int w = 0; w < n; ++w) {
    o << m.name(VRef::core(w));
    for (int v = 0; v < n; ++v) o << "," << to_string(m.core_block(w, v));
    o << "\n";
  }
  for (std::size_t c = 0; c < m.cusps.size(); ++c) {
    const auto& d = m.cusps[c];
    o << "# cusp " << c << " attach=" << m.name(VRef::core(d.attach)) << " attach_weight=" << to_string(d.attach_weight)
      << " inward=" << to_string(d.inward) << " outward=" << to_string(d.outward) << "\n";
  }
  return o.str();
}

}  // namespace btq
