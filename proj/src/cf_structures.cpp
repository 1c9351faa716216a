#include "btq/cf_structures.hpp"

#include <algorithm>
#include <stdexcept>

namespace btq {

int WCFG::num_core() const {
  int n = 0;
  while (n < core.g.num_vertices && core.is_actual(n)) ++n;
  return n;
}

std::string WCFG::name(int v) const { return core.g.label(v); }

std::optional<int> WCFG::find(const std::string& nm) const {
  for (int v = 0; v < num_core(); ++v)
    if (name(v) == nm) return v;
  return std::nullopt;
}

Rational WCFG::weight(int v, int w) const {
  auto it = weights.find({v, w});
  return it == weights.end() ? Rational(0) : it->second;
}

void WCFG::validate() const {
  core.validate();
  const int n = num_core();
  for (int v = n; v < core.g.num_vertices; ++v)
    if (core.is_actual(v)) throw std::invalid_argument("actual vertices must precede virtual ones");
  auto pair_name = [&](int v, int w) { return "(" + name(v) + ", " + name(w) + ")"; };
  for (const auto& [k, val] : weights) {
    auto [v, w] = k;
    if (v < 0 || w < 0 || v >= n || w >= n) throw std::invalid_argument("weight on a non-core vertex");
    if (val == 0) continue;
    if (weight(w, v) == 0) throw std::invalid_argument("non-graphic weights at " + pair_name(v, w));
  }
  // Core adjacency must match the weight support.
  for (int v = 0; v < n; ++v) {
    std::multiset<int> nb;
    for (int u : core.actual_neighbours(v)) nb.insert(u);
    for (int w = 0; w < n; ++w) {
      bool adj = nb.count(w) > 0;
      bool wt = weight(v, w) != 0;
      if (adj != wt) throw std::invalid_argument("core edges disagree with weights at " + pair_name(v, w));
    }
  }
  for (const auto& c : cusps) {
    if (c.attach < 0 || c.attach >= n) throw std::invalid_argument("cusp attached outside the core");
    if (c.inward <= 0 || c.outward <= 0 || c.attach_weight <= 0)
      throw std::invalid_argument("cusp weights must be positive at " + name(c.attach));
  }
}

bool WCFG::regular() const {
  for (const auto& [k, val] : weights)
    if (val < 0) return false;
  for (const auto& c : cusps)
    if (c.inward <= 0 || c.outward <= 0 || c.attach_weight <= 0) return false;
  return true;
}

WCFG make_wcfg(const std::vector<std::string>& names, const WeightMap& weights,
               const std::vector<CuspDescriptor>& cusps, std::optional<int> q) {
  WCFG w;
  const int n = static_cast<int>(names.size());
  for (const auto& nm : names) {
    w.core.g.add_vertex(nm.empty() ? " " : nm);
    w.core.kind.push_back(Kind::Actual);
  }
  for (const auto& [k, val] : weights) {
    if (val == 0) continue;
    if (k.first < 0 || k.second < 0 || k.first >= n || k.second >= n)
      throw std::invalid_argument("weight on an unknown vertex");
    w.weights[k] = val;
  }
  auto add_virtual = [&]() {
    int x = w.core.g.add_vertex("*");
    w.core.kind.push_back(Kind::Virtual);
    return x;
  };
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      bool adj = w.weight(u, v) != 0 || w.weight(v, u) != 0;
      if (!adj) continue;
      int x = add_virtual();
      w.core.g.add_edge(u, x);
      if (u != v) w.core.g.add_edge(v, x);
    }
  w.cusps = cusps;
  w.q = q;
  w.validate();
  return w;
}

WCFG reduction(const FineGraph& fg, const WeightMap& weights) {
  auto actual = fg.actual_vertices();
  std::map<int, int> idx;
  std::vector<std::string> names;
  for (int v : actual) {
    idx[v] = static_cast<int>(names.size());
    names.push_back(fg.g.labels.empty() ? std::to_string(v) : fg.g.label(v));
  }
  WeightMap w;
  for (const auto& [k, val] : weights) w[{idx.at(k.first), idx.at(k.second)}] = val;
  return make_wcfg(names, w, {});
}

std::vector<std::pair<VRef, Rational>> CFMatrix::column(const VRef& x) const {
  std::vector<std::pair<VRef, Rational>> out;
  if (x.cusp < 0) {
    for (int w = 0; w < num_core(); ++w)
      if (core_block(w, x.pos) != 0) out.push_back({VRef::core(w), core_block(w, x.pos)});
    for (int c = 0; c < static_cast<int>(cusps.size()); ++c)
      if (cusps[c].attach == x.pos) out.push_back({VRef{c, 1}, cusps[c].attach_weight});
    return out;
  }
  const auto& c = cusps.at(x.cusp);
  VRef prev = (x.pos == 1) ? VRef::core(c.attach) : VRef{x.cusp, x.pos - 1};
  out.push_back({prev, c.inward});
  out.push_back({VRef{x.cusp, x.pos + 1}, c.outward});
  return out;
}

std::string CFMatrix::name(const VRef& x) const {
  if (x.cusp < 0) return x.pos < static_cast<int>(names.size()) ? names[x.pos] : std::to_string(x.pos);
  const auto& c = cusps.at(x.cusp);
  std::string scheme = c.label_scheme.empty() ? "c" + std::to_string(x.cusp) + "_" : c.label_scheme;
  return scheme + std::to_string(c.label_offset + c.label_step * x.pos);
}

CFMatrix to_matrix(const WCFG& w) {
  w.validate();
  CFMatrix m;
  const int n = w.num_core();
  m.core_block = QMatrix(n, n);
  for (const auto& [k, val] : w.weights) m.core_block(k.second, k.first) = val;
  m.cusps = w.cusps;
  for (int v = 0; v < n; ++v) m.names.push_back(w.name(v));
  m.q = w.q;
  return m;
}

WCFG from_matrix(const CFMatrix& m) {
  WeightMap wm;
  for (int v = 0; v < m.num_core(); ++v)
    for (int u = 0; u < m.num_core(); ++u)
      if (m.core_block(u, v) != 0) wm[{v, u}] = m.core_block(u, v);
  return make_wcfg(m.names, wm, m.cusps, m.q);
}

CFMatrix normalize(const CFMatrix& m) {
  CFMatrix out = m;
  const int n = m.num_core();
  std::vector<Rational> sums(n);
  for (int v = 0; v < n; ++v) {
    for (const auto& [y, val] : m.column(VRef::core(v))) {
      if (val < 0) throw std::invalid_argument("normalize: negative entry in column " + m.names[v]);
      sums[v] += val;
    }
    if (sums[v] == 0) throw std::invalid_argument("normalize: zero column " + m.names[v]);
    for (int u = 0; u < n; ++u) out.core_block(u, v) /= sums[v];
  }
  for (auto& c : out.cusps) {
    Rational s = c.inward + c.outward;
    if (c.inward < 0 || c.outward < 0) throw std::invalid_argument("normalize: negative cusp weight");
    c.attach_weight /= sums[c.attach];
    c.inward /= s;
    c.outward /= s;
  }
  return out;
}

Charge apply_operator(const CFMatrix& m, const Charge& mu) {
  Charge out;
  for (const auto& [x, val] : mu) {
    if (val == 0) continue;
    for (const auto& [y, wt] : m.column(x)) out[y] += wt * val;
  }
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

Charge delta(const VRef& v) { return Charge{{v, Rational(1)}}; }

Truncation truncate(const CFMatrix& m, int depth) {
  Truncation t;
  for (int v = 0; v < m.num_core(); ++v) t.order.push_back(VRef::core(v));
  for (int c = 0; c < static_cast<int>(m.cusps.size()); ++c)
    for (int d = 1; d <= depth; ++d) t.order.push_back(VRef{c, d});
  for (int i = 0; i < static_cast<int>(t.order.size()); ++i) t.index[t.order[i]] = i;
  const int n = static_cast<int>(t.order.size());
  t.m = QMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (const auto& [y, val] : m.column(t.order[i])) {
      auto it = t.index.find(y);
      if (it != t.index.end()) t.m(it->second, i) = val;
    }
    if (t.order[i].cusp >= 0 && t.order[i].pos == depth) t.boundary.insert(i);
  }
  return t;
}

namespace {

// Working state for chain absorption on a finite weighted graph.
struct ChainState {
  struct Chain {
    std::vector<int> tail;  // v_1 first
    int attach;
    Rational inward;
    std::optional<Rational> outward;
    int shift = 0;  // vertices absorbed so far
  };
  const QMatrix* m;  // column = source
  std::vector<Chain> chains;
  std::vector<bool> absorbed;

  Rational wt(int from, int to) const { return (*m)(to, from); }
  std::vector<int> neighbours(int v) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(m->rows()); ++u)
      if (u != v && (wt(v, u) != 0 || wt(u, v) != 0)) out.push_back(u);
    return out;
  }
  bool attach_of_other(int v, std::size_t self) const {
    for (std::size_t c = 0; c < chains.size(); ++c)
      if (c != self && chains[c].attach == v) return true;
    return false;
  }
  // Tries to move the attach vertex of chain c into its tail.
  bool absorb_one(std::size_t c) {
    Chain& ch = chains[c];
    int v = ch.attach;
    if (wt(v, v) != 0 || attach_of_other(v, c)) return false;
    int first = ch.tail.front();
    std::vector<int> others;
    for (int u : neighbours(v))
      if (u != first && !absorbed[u]) others.push_back(u);
    // The tail vertex must be the only absorbed neighbour.
    for (int u : neighbours(v))
      if (u != first && absorbed[u]) return false;
    if (others.size() != 1) return false;
    int u = others[0];
    if (wt(v, u) != ch.inward) return false;
    if (ch.outward && wt(v, first) != *ch.outward) return false;
    if (!ch.outward) ch.outward = wt(v, first);
    absorbed[v] = true;
    ++ch.shift;
    ch.tail.insert(ch.tail.begin(), v);
    ch.attach = u;
    return true;
  }
  // One step per chain per round, so that two chains growing towards each
  // other meet in the middle instead of the first one swallowing the core.
  void run() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < chains.size(); ++c)
        if (absorb_one(c)) changed = true;
    }
  }
};

}  // namespace

DetectedCusps detect_cusps(const QMatrix& m, const std::set<int>& boundary,
                           std::optional<std::pair<Rational, Rational>> pattern) {
  const int n = static_cast<int>(m.rows());
  ChainState st;
  st.m = &m;
  st.absorbed.assign(n, false);
  DetectedCusps out;
  std::vector<int> chain_bnd;
  for (int b : boundary) {
    auto nb = st.neighbours(b);
    if (nb.size() != 1 || st.wt(b, b) != 0) {
      out.non_canonical.push_back(b);
      continue;
    }
    ChainState::Chain ch;
    ch.tail = {b};
    ch.attach = nb[0];
    ch.inward = st.wt(b, nb[0]);
    if (pattern) {
      if (ch.inward != pattern->first) {
        out.non_canonical.push_back(b);
        continue;
      }
      ch.outward = pattern->second;
    }
    st.absorbed[b] = true;
    st.chains.push_back(ch);
    chain_bnd.push_back(b);
  }
  st.run();
  std::vector<int> pos(n, -1);
  for (int v = 0; v < n; ++v)
    if (!st.absorbed[v]) {
      pos[v] = static_cast<int>(out.core.size());
      out.core.push_back(v);
    }
  for (std::size_t c = 0; c < st.chains.size(); ++c) {
    const auto& ch = st.chains[c];
    // A chain whose outward weight was never observed is too short to tell.
    if (!ch.outward || pos[ch.attach] < 0) {
      out.non_canonical.push_back(chain_bnd[c]);
      continue;
    }
    CuspDescriptor d;
    d.attach = pos[ch.attach];
    d.attach_weight = st.wt(ch.attach, ch.tail.front());
    d.inward = ch.inward;
    d.outward = *ch.outward;
    out.cusps.push_back(d);
    out.tails.push_back(ch.tail);
  }
  return out;
}

WCFG wcfg_from_detection(const QMatrix& m, const DetectedCusps& d, const std::vector<std::string>& names,
                         std::optional<int> q) {
  std::vector<std::string> core_names;
  WeightMap wm;
  for (int i = 0; i < static_cast<int>(d.core.size()); ++i) {
    int v = d.core[i];
    core_names.push_back(v < static_cast<int>(names.size()) ? names[v] : std::to_string(v));
    for (int j = 0; j < static_cast<int>(d.core.size()); ++j)
      if (m(d.core[j], v) != 0) wm[{i, j}] = m(d.core[j], v);
  }
  return make_wcfg(core_names, wm, d.cusps, q);
}

WCFG canonicalize(const WCFG& w) {
  w.validate();
  const int n = w.num_core();
  const int nc = static_cast<int>(w.cusps.size());
  // Finite stand-in: core plus one vertex per cusp for v_1.
  QMatrix m(n + nc, n + nc);
  for (const auto& [k, val] : w.weights) m(k.second, k.first) = val;
  ChainState st;
  st.m = &m;
  st.absorbed.assign(n + nc, false);
  for (int c = 0; c < nc; ++c) {
    const auto& cd = w.cusps[c];
    m(n + c, cd.attach) = cd.attach_weight;
    m(cd.attach, n + c) = cd.inward;
    st.absorbed[n + c] = true;
    st.chains.push_back({{n + c}, cd.attach, cd.inward, cd.outward, 0});
  }
  st.run();
  std::vector<int> pos(n, -1);
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v)
    if (!st.absorbed[v]) {
      pos[v] = static_cast<int>(names.size());
      names.push_back(w.name(v));
    }
  WeightMap wm;
  for (const auto& [k, val] : w.weights)
    if (pos[k.first] >= 0 && pos[k.second] >= 0) wm[{pos[k.first], pos[k.second]}] = val;
  std::vector<CuspDescriptor> cusps;
  for (int c = 0; c < nc; ++c) {
    CuspDescriptor d = w.cusps[c];
    d.attach = pos[st.chains[c].attach];
    d.attach_weight = st.wt(st.chains[c].attach, st.chains[c].tail.front());
    d.label_offset -= d.label_step * st.chains[c].shift;
    cusps.push_back(d);
  }
  return make_wcfg(names, wm, cusps, w.q);
}

bool equivalent(const WCFG& a0, const WCFG& b0) {
  WCFG a = canonicalize(a0), b = canonicalize(b0);
  if (a.num_core() != b.num_core() || a.cusps.size() != b.cusps.size()) return false;
  std::vector<std::string> patterns;
  auto pat = [](const CuspDescriptor& c) { return c.inward.get_str() + "/" + c.outward.get_str(); };
  for (const auto& c : a.cusps) patterns.push_back(pat(c));
  for (const auto& c : b.cusps) patterns.push_back(pat(c));
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  auto build = [&](const WCFG& w, std::vector<std::vector<Rational>>& mat, std::vector<int>& col) {
    const int n = w.num_core(), nc = static_cast<int>(w.cusps.size());
    mat.assign(n + nc, std::vector<Rational>(n + nc));
    col.assign(n + nc, 0);
    for (const auto& [k, val] : w.weights) mat[k.first][k.second] = val;
    for (int c = 0; c < nc; ++c) {
      const auto& cd = w.cusps[c];
      mat[cd.attach][n + c] = cd.attach_weight;
      mat[n + c][cd.attach] = cd.inward;
      col[n + c] = 1 + static_cast<int>(std::find(patterns.begin(), patterns.end(), pat(cd)) - patterns.begin());
    }
  };
  std::vector<std::vector<Rational>> ma, mb;
  std::vector<int> ca, cb;
  build(a, ma, ca);
  build(b, mb, cb);
  return find_isomorphism(ma, mb, ca, cb).has_value();
}

}  // namespace btq
