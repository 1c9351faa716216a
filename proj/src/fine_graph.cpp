#include "btq/fine_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace btq {

int Graph::add_vertex(const std::string& label) {
  if (!label.empty() || !labels.empty()) {
    labels.resize(num_vertices);
    labels.push_back(label);
  }
  return num_vertices++;
}

int Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
    throw std::invalid_argument("edge endpoint out of range");
  int a = num_edges();
  src.push_back(u);
  tgt.push_back(v);
  rev.push_back(a + 1);
  src.push_back(v);
  tgt.push_back(u);
  rev.push_back(a);
  return a;
}

std::vector<std::vector<int>> Graph::out_edges() const {
  std::vector<std::vector<int>> out(num_vertices);
  for (int a = 0; a < num_edges(); ++a) out[src[a]].push_back(a);
  return out;
}

std::string Graph::label(int v) const {
  if (v < static_cast<int>(labels.size()) && !labels[v].empty()) return labels[v];
  return std::to_string(v);
}

void Graph::validate() const {
  const int m = num_edges();
  if (static_cast<int>(tgt.size()) != m || static_cast<int>(rev.size()) != m)
    throw std::invalid_argument("graph arrays differ in length");
  if (!labels.empty() && static_cast<int>(labels.size()) != num_vertices)
    throw std::invalid_argument("label count differs from vertex count");
  for (int a = 0; a < m; ++a) {
    if (src[a] < 0 || src[a] >= num_vertices || tgt[a] < 0 || tgt[a] >= num_vertices)
      throw std::invalid_argument("edge endpoint out of range");
    int r = rev[a];
    if (r < 0 || r >= m || r == a) throw std::invalid_argument("rev is not fixed-point free");
    if (rev[r] != a) throw std::invalid_argument("rev is not an involution");
    if (src[r] != tgt[a]) throw std::invalid_argument("src(rev a) != tgt(a)");
  }
}

std::vector<int> FineGraph::actual_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices; ++v)
    if (is_actual(v)) out.push_back(v);
  return out;
}

int FineGraph::valency(int v) const {
  return static_cast<int>(std::count(g.src.begin(), g.src.end(), v));
}

std::vector<int> FineGraph::actual_neighbours(int v) const {
  std::vector<int> out;
  for (int a = 0; a < g.num_edges(); ++a) {
    if (g.src[a] != v) continue;
    int x = g.tgt[a];
    bool other = false;
    for (int b = 0; b < g.num_edges(); ++b) {
      if (g.src[b] != x || b == g.rev[a]) continue;
      out.push_back(g.tgt[b]);
      other = true;
    }
    if (!other) out.push_back(v);
  }
  return out;
}

bool FineGraph::has_half_edge(int v) const {
  for (int a = 0; a < g.num_edges(); ++a)
    if (g.src[a] == v && valency(g.tgt[a]) == 1) return true;
  return false;
}

void FineGraph::validate() const {
  g.validate();
  if (static_cast<int>(kind.size()) != g.num_vertices)
    throw std::invalid_argument("kind array differs from vertex count");
  for (int a = 0; a < g.num_edges(); ++a)
    if (kind[g.src[a]] == kind[g.tgt[a]])
      throw std::invalid_argument("fine graph edge joins two vertices of the same kind");
  for (int v = 0; v < g.num_vertices; ++v)
    if (!is_actual(v)) {
      int val = valency(v);
      if (val != 1 && val != 2) throw std::invalid_argument("virtual vertex of valency " + std::to_string(val));
    }
}

static bool is_perm(const Perm& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

void GroupAction::validate(const Graph& g) const {
  const int n = order();
  if (n == 0) throw std::invalid_argument("empty group");
  if (identity < 0 || identity >= n) throw std::invalid_argument("identity out of range");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("table is not square");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n) throw std::invalid_argument("table entry out of range");
  for (int a = 0; a < n; ++a)
    if (table[identity][a] != a || table[a][identity] != a) throw std::invalid_argument("identity law fails");
  for (int a = 0; a < n; ++a) {
    bool has_inv = false;
    for (int b = 0; b < n && !has_inv; ++b) has_inv = (table[a][b] == identity && table[b][a] == identity);
    if (!has_inv) throw std::invalid_argument("element without inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw std::invalid_argument("table not associative");
  if (static_cast<int>(vperm.size()) != n || static_cast<int>(eperm.size()) != n)
    throw std::invalid_argument("one permutation pair per element required");
  for (int a = 0; a < n; ++a) {
    if (!is_perm(vperm[a], g.num_vertices) || !is_perm(eperm[a], g.num_edges()))
      throw std::invalid_argument("element does not act by permutations");
    for (int e = 0; e < g.num_edges(); ++e) {
      int ge = eperm[a][e];
      if (g.src[ge] != vperm[a][g.src[e]] || g.tgt[ge] != vperm[a][g.tgt[e]] || eperm[a][g.rev[e]] != g.rev[ge])
        throw std::invalid_argument("element is not a graph automorphism");
    }
  }
  // The action must be a homomorphism for the table.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = table[a][b];
      for (int v = 0; v < g.num_vertices; ++v)
        if (vperm[ab][v] != vperm[a][vperm[b][v]]) throw std::invalid_argument("action disagrees with table");
      for (int e = 0; e < g.num_edges(); ++e)
        if (eperm[ab][e] != eperm[a][eperm[b][e]]) throw std::invalid_argument("action disagrees with table");
    }
}

GroupAction GroupAction::trivial(const Graph& g) {
  GroupAction act;
  act.table = {{0}};
  Perm v(g.num_vertices), e(g.num_edges());
  std::iota(v.begin(), v.end(), 0);
  std::iota(e.begin(), e.end(), 0);
  act.vperm = {v};
  act.eperm = {e};
  return act;
}

GroupAction GroupAction::generate(const Graph& g, const std::vector<std::pair<Perm, Perm>>& gens) {
  using Elt = std::pair<Perm, Perm>;
  auto compose = [](const Elt& x, const Elt& y) {  // x after y
    Elt r{Perm(y.first.size()), Perm(y.second.size())};
    for (std::size_t i = 0; i < y.first.size(); ++i) r.first[i] = x.first[y.first[i]];
    for (std::size_t i = 0; i < y.second.size(); ++i) r.second[i] = x.second[y.second[i]];
    return r;
  };
  for (const auto& gen : gens)
    if (!is_perm(gen.first, g.num_vertices) || !is_perm(gen.second, g.num_edges()))
      throw std::invalid_argument("generator is not a permutation");
  Elt id{Perm(g.num_vertices), Perm(g.num_edges())};
  std::iota(id.first.begin(), id.first.end(), 0);
  std::iota(id.second.begin(), id.second.end(), 0);
  std::vector<Elt> elts{id};
  std::map<Elt, int> index{{id, 0}};
  for (std::size_t i = 0; i < elts.size(); ++i)
    for (const auto& gen : gens) {
      Elt p = compose(gen, elts[i]);
      if (index.emplace(p, static_cast<int>(elts.size())).second) elts.push_back(std::move(p));
    }
  GroupAction act;
  const int n = static_cast<int>(elts.size());
  act.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) act.table[a][b] = index.at(compose(elts[a], elts[b]));
  for (auto& e : elts) {
    act.vperm.push_back(std::move(e.first));
    act.eperm.push_back(std::move(e.second));
  }
  act.validate(g);
  return act;
}

Perm induced_edge_perm(const Graph& g, const Perm& vperm) {
  std::map<std::pair<int, int>, int> by_ends;
  for (int a = 0; a < g.num_edges(); ++a) {
    if (g.src[a] == g.tgt[a]) throw std::invalid_argument("induced_edge_perm: loop present");
    if (!by_ends.emplace(std::make_pair(g.src[a], g.tgt[a]), a).second)
      throw std::invalid_argument("induced_edge_perm: multiple edge present");
  }
  Perm e(g.num_edges());
  for (int a = 0; a < g.num_edges(); ++a) {
    auto it = by_ends.find({vperm[g.src[a]], vperm[g.tgt[a]]});
    if (it == by_ends.end()) throw std::invalid_argument("vertex permutation is not an automorphism");
    e[a] = it->second;
  }
  return e;
}

// Virtual vertex a of the subdivision is the edge pair {a, rev a}; edge 2a is
// (0,a): src(a) -> x, edge 2a+1 is (1,a): x -> tgt(a).
static std::vector<int> pair_index(const Graph& g) {
  std::vector<int> idx(g.num_edges(), -1);
  int k = 0;
  for (int a = 0; a < g.num_edges(); ++a)
    if (idx[a] < 0) {
      idx[a] = k;
      idx[g.rev[a]] = k;
      ++k;
    }
  return idx;
}

FineGraph barycentric_subdivision(const Graph& g) {
  g.validate();
  auto pidx = pair_index(g);
  const int npairs = g.num_edges() / 2;
  FineGraph fg;
  fg.g.num_vertices = g.num_vertices + npairs;
  fg.kind.assign(g.num_vertices, Kind::Actual);
  fg.kind.resize(fg.g.num_vertices, Kind::Virtual);
  if (!g.labels.empty()) {
    fg.g.labels = g.labels;
    fg.g.labels.resize(fg.g.num_vertices);
  }
  const int m = g.num_edges();
  fg.g.src.resize(2 * m);
  fg.g.tgt.resize(2 * m);
  fg.g.rev.resize(2 * m);
  for (int a = 0; a < m; ++a) {
    int x = g.num_vertices + pidx[a];
    fg.g.src[2 * a] = g.src[a];
    fg.g.tgt[2 * a] = x;
    fg.g.src[2 * a + 1] = x;
    fg.g.tgt[2 * a + 1] = g.tgt[a];
    fg.g.rev[2 * a] = 2 * g.rev[a] + 1;
    fg.g.rev[2 * a + 1] = 2 * g.rev[a];
  }
  fg.validate();
  return fg;
}

GroupAction subdivided_action(const Graph& g, const GroupAction& act) {
  act.validate(g);
  auto pidx = pair_index(g);
  const int npairs = g.num_edges() / 2;
  std::vector<int> pair_rep(npairs);
  for (int a = g.num_edges() - 1; a >= 0; --a) pair_rep[pidx[a]] = a;
  GroupAction out;
  out.table = act.table;
  out.identity = act.identity;
  for (int e = 0; e < act.order(); ++e) {
    Perm v(g.num_vertices + npairs), ed(2 * g.num_edges());
    for (int x = 0; x < g.num_vertices; ++x) v[x] = act.vperm[e][x];
    for (int p = 0; p < npairs; ++p) v[g.num_vertices + p] = g.num_vertices + pidx[act.eperm[e][pair_rep[p]]];
    for (int a = 0; a < g.num_edges(); ++a) {
      ed[2 * a] = 2 * act.eperm[e][a];
      ed[2 * a + 1] = 2 * act.eperm[e][a] + 1;
    }
    out.vperm.push_back(std::move(v));
    out.eperm.push_back(std::move(ed));
  }
  return out;
}

FineQuotient orbit_quotient(const FineGraph& fg, const GroupAction& act) {
  act.validate(fg.g);
  const int nv = fg.g.num_vertices, ne = fg.g.num_edges();
  for (int e = 0; e < act.order(); ++e)
    for (int v = 0; v < nv; ++v)
      if (fg.kind[act.vperm[e][v]] != fg.kind[v]) throw std::invalid_argument("action does not preserve vertex kinds");
  auto classes = [&](int n, const std::vector<Perm>& perms) {
    std::vector<int> rep(n, -1), cls(n, -1);
    int k = 0;
    for (int x = 0; x < n; ++x) {
      if (cls[x] >= 0) continue;
      for (const auto& p : perms) cls[p[x]] = k;
      ++k;
    }
    return std::make_pair(cls, k);
  };
  auto [vc, nvq] = classes(nv, act.vperm);
  auto [ec, neq] = classes(ne, act.eperm);
  FineQuotient q;
  q.vertex_class = vc;
  q.edge_class = ec;
  q.fg.g.num_vertices = nvq;
  q.fg.kind.resize(nvq);
  bool labelled = !fg.g.labels.empty();
  if (labelled) q.fg.g.labels.resize(nvq);
  std::vector<bool> seen(nvq, false);
  for (int v = 0; v < nv; ++v)
    if (!seen[vc[v]]) {
      seen[vc[v]] = true;
      q.fg.kind[vc[v]] = fg.kind[v];
      if (labelled) q.fg.g.labels[vc[v]] = fg.g.labels[v];
    }
  q.fg.g.src.resize(neq);
  q.fg.g.tgt.resize(neq);
  q.fg.g.rev.resize(neq);
  std::vector<bool> eseen(neq, false);
  for (int a = 0; a < ne; ++a)
    if (!eseen[ec[a]]) {
      eseen[ec[a]] = true;
      q.fg.g.src[ec[a]] = vc[fg.g.src[a]];
      q.fg.g.tgt[ec[a]] = vc[fg.g.tgt[a]];
      q.fg.g.rev[ec[a]] = ec[fg.g.rev[a]];
    }
  q.fg.validate();
  return q;
}

FineQuotient fine_quotient(const Graph& g, const GroupAction& act) {
  return orbit_quotient(barycentric_subdivision(g), subdivided_action(g, act));
}

WeightMap quotient_weights(const Graph& g, const GroupAction& act) {
  FineQuotient fq = fine_quotient(g, act);
  WeightMap w;
  std::map<int, std::map<int, long>> first;
  auto out = g.out_edges();
  for (int v = 0; v < g.num_vertices; ++v) {
    std::map<int, long> counts;
    for (int a : out[v]) ++counts[fq.vertex_class[g.tgt[a]]];
    int cv = fq.vertex_class[v];
    auto it = first.find(cv);
    if (it == first.end())
      first.emplace(cv, counts);
    else if (it->second != counts)
      throw std::invalid_argument("preimages of vertex class " + std::to_string(cv) + " disagree on weights");
  }
  for (const auto& [cv, counts] : first)
    for (const auto& [cw, c] : counts) w[{cv, cw}] = Rational(c);
  return w;
}

WeightMap quotient_weights(const FineGraph& fg, const GroupAction& act, const FineQuotient& fq) {
  (void)act;
  std::map<int, std::map<int, long>> first;
  for (int v : fg.actual_vertices()) {
    std::map<int, long> counts;
    for (int u : fg.actual_neighbours(v)) ++counts[fq.vertex_class[u]];
    int cv = fq.vertex_class[v];
    auto it = first.find(cv);
    if (it == first.end())
      first.emplace(cv, counts);
    else if (it->second != counts)
      throw std::invalid_argument("preimages of vertex class " + std::to_string(cv) + " disagree on weights");
  }
  WeightMap w;
  for (const auto& [cv, counts] : first)
    for (const auto& [cw, c] : counts) w[{cv, cw}] = Rational(c);
  return w;
}

FineGraph reduce_fine_graph(const FineGraph& fg) {
  fg.validate();
  auto actual = fg.actual_vertices();
  std::vector<int> idx(fg.g.num_vertices, -1);
  FineGraph out;
  for (int v : actual) {
    idx[v] = out.g.num_vertices;
    out.g.add_vertex(fg.g.labels.empty() ? "" : fg.g.label(v));
    out.kind.push_back(Kind::Actual);
  }
  std::set<std::pair<int, int>> pairs;
  std::set<int> halves;
  for (int v : actual)
    for (int u : fg.actual_neighbours(v)) {
      if (u == v)
        halves.insert(idx[v]);
      else
        pairs.insert({std::min(idx[u], idx[v]), std::max(idx[u], idx[v])});
    }
  auto add_virtual = [&]() {
    int x = out.g.add_vertex(out.g.labels.empty() ? "" : "*");
    out.kind.push_back(Kind::Virtual);
    return x;
  };
  for (auto [u, v] : pairs) {
    int x = add_virtual();
    out.g.add_edge(u, x);
    out.g.add_edge(v, x);
  }
  for (int v : halves) {
    int x = add_virtual();
    out.g.add_edge(v, x);
  }
  out.validate();
  return out;
}

std::optional<std::vector<int>> find_isomorphism(const std::vector<std::vector<Rational>>& a,
                                                 const std::vector<std::vector<Rational>>& b,
                                                 const std::vector<int>& colour_a,
                                                 const std::vector<int>& colour_b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return std::nullopt;
  if (n > 64) throw std::invalid_argument("isomorphism search limited to 64 vertices");
  auto col = [](const std::vector<int>& c, int i) { return c.empty() ? 0 : c[i]; };
  // Vertex invariant: colour, diagonal, sorted out- and in-weights.
  auto invariant = [&](const std::vector<std::vector<Rational>>& m, const std::vector<int>& c, int i) {
    std::vector<Rational> outw, inw;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (m[i][j] != 0) outw.push_back(m[i][j]);
      if (m[j][i] != 0) inw.push_back(m[j][i]);
    }
    std::sort(outw.begin(), outw.end());
    std::sort(inw.begin(), inw.end());
    std::string s = std::to_string(col(c, i)) + "|" + m[i][i].get_str() + "|";
    for (auto& x : outw) s += x.get_str() + ",";
    s += "|";
    for (auto& x : inw) s += x.get_str() + ",";
    return s;
  };
  std::vector<std::string> ia(n), ib(n);
  for (int i = 0; i < n; ++i) {
    ia[i] = invariant(a, colour_a, i);
    ib[i] = invariant(b, colour_b, i);
  }
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // BFS order in a so that each vertex after the first of its component has a
  // mapped neighbour.
  std::vector<int> order;
  std::vector<bool> placed(n, false);
  for (int s = 0; s < n; ++s) {
    if (placed[s]) continue;
    std::vector<int> queue{s};
    placed[s] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      order.push_back(v);
      for (int u = 0; u < n; ++u)
        if (!placed[u] && (a[v][u] != 0 || a[u][v] != 0)) {
          placed[u] = true;
          queue.push_back(u);
        }
    }
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int k) {
    if (k == n) return true;
    int v = order[k];
    for (int w = 0; w < n; ++w) {
      if (used[w] || ia[v] != ib[w]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int u = order[j];
        ok = (a[v][u] == b[w][map[u]]) && (a[u][v] == b[map[u]][w]);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (extend(k + 1)) return true;
      used[w] = false;
      map[v] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

static std::vector<std::vector<Rational>> edge_counts(const Graph& g) {
  std::vector<std::vector<Rational>> m(g.num_vertices, std::vector<Rational>(g.num_vertices));
  for (int a = 0; a < g.num_edges(); ++a) m[g.src[a]][g.tgt[a]] += 1;
  return m;
}

std::optional<std::vector<int>> is_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.num_vertices > 64 || g2.num_vertices > 64)
    throw std::invalid_argument("isomorphism search limited to 64 vertices");
  if (g1.num_vertices != g2.num_vertices || g1.num_edges() != g2.num_edges()) return std::nullopt;
  return find_isomorphism(edge_counts(g1), edge_counts(g2));
}

Graph complete_bipartite(int m, int n) {
  Graph g;
  for (int i = 0; i < m + n; ++i) g.add_vertex();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) g.add_edge(i, m + j);
  return g;
}

Graph cube_graph() {
  Graph g;
  for (int i = 0; i < 8; ++i) g.add_vertex();
  for (int i = 0; i < 8; ++i)
    for (int b = 0; b < 3; ++b)
      if (i < (i ^ (1 << b))) g.add_edge(i, i ^ (1 << b));
  return g;
}

Graph petersen_graph() {
  Graph g;
  for (int i = 0; i < 10; ++i) g.add_vertex();
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, 5 + i);
  }
  return g;
}

Graph prism_graph(int n) {
  Graph g;
  for (int i = 0; i < 2 * n; ++i) g.add_vertex();
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(n + i, n + (i + 1) % n);
    g.add_edge(i, n + i);
  }
  return g;
}

Graph cycle_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

}  // namespace btq
