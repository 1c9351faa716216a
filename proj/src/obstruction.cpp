#include "btq/obstruction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace btq {

bool Shell::contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

static std::vector<std::vector<int>> core_adjacency(const WCFG& w) {
  const int n = w.num_core();
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (u != v && w.weight(v, u) != 0) adj[v].push_back(u);
  return adj;
}

bool t3_criterion(const WCFG& w) {
  const int n = w.num_core();
  auto adj = core_adjacency(w);
  std::vector<int> cusp_count(n, 0);
  for (const auto& c : w.cusps) ++cusp_count[c.attach];
  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp[s] = s;
    for (std::size_t h = 0; h < nodes.size(); ++h)
      for (int u : adj[nodes[h]])
        if (comp[u] < 0) {
          comp[u] = s;
          nodes.push_back(u);
        }
    long edges = 0, leaves = 0;
    for (int v : nodes) {
      edges += static_cast<long>(adj[v].size());
      if (adj[v].size() + cusp_count[v] == 1) ++leaves;
    }
    edges /= 2;
    if (edges != static_cast<long>(nodes.size()) - 1) return false;
    if (leaves > 1) return false;
  }
  return true;
}

Shell candidate_shell(const WCFG& w) {
  const int n = w.num_core();
  auto adj = core_adjacency(w);
  std::vector<bool> removed(n, false);
  // Each chain is (attach, first absorbed vertex or -1 for the original tail).
  std::vector<std::pair<int, int>> chains;
  for (const auto& c : w.cusps) chains.emplace_back(c.attach, -1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      auto [v, first] = chains[c];
      if (removed[v]) continue;
      bool shared = false;
      for (std::size_t d = 0; d < chains.size(); ++d)
        if (d != c && chains[d].first == v) shared = true;
      if (shared) continue;
      std::vector<int> others;
      bool touches_absorbed = false;
      for (int u : adj[v]) {
        if (u == first) continue;
        if (removed[u]) touches_absorbed = true;
        others.push_back(u);
      }
      if (touches_absorbed || others.size() != 1) continue;
      removed[v] = true;
      chains[c] = {others[0], v};
      changed = true;
    }
  }
  for (const auto& ch : chains) removed[ch.first] = true;
  Shell s;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) s.vertices.push_back(v);
  return s;
}

namespace {

CFMatrix transition(const WCFG& w) {
  CFMatrix m = to_matrix(w);
  return w.regular() ? normalize(m) : m;
}

// Vertices within distance r of the shell.
std::vector<VRef> window(const CFMatrix& t, const Shell& shell, int r) {
  std::map<VRef, int> dist;
  std::deque<VRef> queue;
  for (int v : shell.vertices) {
    dist[VRef::core(v)] = 0;
    queue.push_back(VRef::core(v));
  }
  while (!queue.empty()) {
    VRef x = queue.front();
    queue.pop_front();
    if (dist[x] == r) continue;
    for (const auto& [y, val] : t.column(x))
      if (!dist.count(y)) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  std::vector<VRef> out;
  for (const auto& [x, d] : dist) out.push_back(x);
  return out;
}

int shell_diameter(const CFMatrix& t, const Shell& shell) {
  int diam = 0;
  for (int v : shell.vertices) {
    std::map<VRef, int> dist{{VRef::core(v), 0}};
    std::deque<VRef> queue{VRef::core(v)};
    int seen = 0;
    while (!queue.empty() && seen < static_cast<int>(shell.vertices.size())) {
      VRef x = queue.front();
      queue.pop_front();
      if (x.cusp < 0 && shell.contains(x.pos)) {
        ++seen;
        diam = std::max(diam, dist[x]);
      }
      for (const auto& [y, val] : t.column(x))
        if (!dist.count(y)) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
    }
  }
  return diam;
}

ObstructionBasis solve(const WCFG& w, const Shell& shell, const ObstructionOptions& opt, int radius) {
  for (int v : shell.vertices)
    for (const auto& c : w.cusps)
      if (c.attach == v) throw std::invalid_argument("shell meets a cusp at " + w.name(v));
  CFMatrix t = transition(w);
  const int k = static_cast<int>(shell.vertices.size());
  ObstructionBasis out;
  out.shell = shell;
  if (k == 0) return out;
  std::map<int, int> pos;
  for (int i = 0; i < k; ++i) pos[shell.vertices[i]] = i;
  auto unknown = [&](int y, int x) { return x * k + y; };  // F[y][x]
  auto tcol = [&](const VRef& x) {
    std::map<VRef, Rational> c;
    for (const auto& [y, val] : t.column(x)) c[y] += val;
    return c;
  };
  auto in_shell = [&](const VRef& x) { return x.cusp < 0 && pos.count(x.pos) > 0; };
  std::vector<VRef> win = window(t, shell, radius);
  std::vector<QVector> rows;
  for (const VRef& x : win) {
    // (F T - T F) delta_x, as a linear form per target vertex.
    std::map<VRef, QVector> eq;
    auto form = [&](const VRef& u) -> QVector& {
      auto it = eq.find(u);
      if (it == eq.end()) it = eq.emplace(u, QVector(k * k)).first;
      return it->second;
    };
    for (const auto& [z, tz] : tcol(x)) {
      if (!in_shell(z)) continue;
      for (int y = 0; y < k; ++y) form(VRef::core(shell.vertices[y]))[unknown(y, pos[z.pos])] += tz;
    }
    if (in_shell(x))
      for (int y = 0; y < k; ++y)
        for (const auto& [u, tu] : tcol(VRef::core(shell.vertices[y])))
          form(u)[unknown(y, pos[x.pos])] -= tu;
    for (auto& [u, row] : eq)
      if (std::any_of(row.begin(), row.end(), [](const Rational& r) { return r != 0; })) rows.push_back(row);
  }
  if (opt.column_sums_zero)
    for (int x = 0; x < k; ++x) {
      QVector row(k * k);
      for (int y = 0; y < k; ++y) row[unknown(y, x)] = 1;
      rows.push_back(row);
    }
  QMatrix sys(rows.size(), k * k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < k * k; ++j) sys(i, j) = rows[i][j];
  for (const auto& v : nullspace(sys)) {
    QMatrix f(k, k);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) f(y, x) = v[unknown(y, x)];
    out.basis.push_back(f);
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace

ObstructionBasis obstruction_space(const WCFG& w, const Shell& shell, const ObstructionOptions& opt) {
  CFMatrix t = transition(w);
  int radius = shell_diameter(t, shell) + opt.guard;
  ObstructionBasis b = solve(w, shell, opt, radius);
  ObstructionBasis wide = solve(w, shell, opt, radius + 4);
  b.stable = (wide.dimension == b.dimension);
  if (b.stable)
    for (const auto& f : wide.basis) b.stable = b.stable && in_span(b, f);
  return b;
}

std::set<int> bad_set(const ObstructionBasis& b) {
  std::set<int> out;
  const int k = static_cast<int>(b.shell.vertices.size());
  for (const auto& f : b.basis)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (f(i, j) != 0) {
          out.insert(b.shell.vertices[i]);
          out.insert(b.shell.vertices[j]);
        }
  return out;
}

std::set<std::pair<int, int>> bad_pairs(const WCFG& w) {
  std::set<std::pair<int, int>> out;
  if (t3_criterion(w)) return out;
  auto t = bad_set(obstruction_space(w, candidate_shell(w)));
  for (int a : t)
    for (int b : t) out.insert({a, b});
  return out;
}

Shell trim_shell(const WCFG& w, const Shell& shell, const ObstructionOptions& opt) {
  Shell cur = shell;
  int dim = obstruction_space(w, cur, opt).dimension;
  for (int v : shell.vertices) {
    Shell trial;
    for (int u : cur.vertices)
      if (u != v) trial.vertices.push_back(u);
    if (obstruction_space(w, trial, opt).dimension == dim) cur = trial;
  }
  return cur;
}

QPoly projected_char_poly(const WCFG& w, const Shell& shell) {
  const int k = static_cast<int>(shell.vertices.size());
  QMatrix m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = w.weight(shell.vertices[j], shell.vertices[i]);
  return char_poly(m);
}

bool in_span(const ObstructionBasis& b, const QMatrix& f) {
  const std::size_t k = b.shell.vertices.size();
  if (f.rows() != k || f.cols() != k) return false;
  if (f.is_zero()) return true;
  QMatrix m(k * k, b.basis.size() + 1);
  for (std::size_t c = 0; c <= b.basis.size(); ++c) {
    const QMatrix& g = (c < b.basis.size()) ? b.basis[c] : f;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i * k + j, c) = g(i, j);
  }
  return rank(m) == b.basis.size();
}

ObstructionBasis annihilator_family(const WCFG& w, const Shell& shell) {
  const int k = static_cast<int>(shell.vertices.size());
  const auto& sv = shell.vertices;
  ObstructionBasis out;
  out.shell = shell;
  if (k == 0) return out;
  // Unknown F[y][x] sits at column x * k + y.
  QMatrix sys(2 * k * k + k, k * k);
  int row = 0;
  for (int y = 0; y < k; ++y)
    for (int x = 0; x < k; ++x, ++row)
      for (int z = 0; z < k; ++z) {
        // (F A)[y][x] = sum_z F[y][z] A[z][x], (A F)[y][x] = sum_z A[y][z] F[z][x]
        sys(row, z * k + y) += w.weight(sv[x], sv[z]);
        sys(row + k * k, x * k + z) += w.weight(sv[z], sv[y]);
      }
  row += k * k;
  for (int x = 0; x < k; ++x, ++row)
    for (int y = 0; y < k; ++y) sys(row, x * k + y) = 1;
  for (const auto& v : nullspace(sys)) {
    QMatrix f(k, k);
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x) f(y, x) = v[x * k + y];
    out.basis.push_back(f);
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace btq
