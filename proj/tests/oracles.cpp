#include "oracles.hpp"

#include <functional>
#include <stdexcept>

namespace oracle {

Truncated truncate_by_hand(const btq::WCFG& w, int depth) {
  Truncated t;
  t.num_core = w.num_core();
  t.out.resize(t.num_core);
  for (const auto& [k, val] : w.weights)
    if (val != 0) t.out[k.first].push_back({k.second, val});
  for (const auto& c : w.cusps) {
    int prev = c.attach;
    for (int k = 1; k <= depth; ++k) {
      int id = static_cast<int>(t.out.size());
      t.out.emplace_back();
      t.out[prev].push_back({id, k == 1 ? c.attach_weight : c.outward});
      t.out[id].push_back({prev, c.inward});
      prev = id;
    }
  }
  return t;
}

Rational promenade_weight(const Truncated& t, int from, int to, int length) {
  Rational total = 0;
  std::function<void(int, int, Rational)> walk = [&](int x, int left, Rational wt) {
    if (left == 0) {
      if (x == to) total += wt;
      return;
    }
    for (const auto& [y, m] : t.out[x]) walk(y, left - 1, wt * m);
  };
  walk(from, length, 1);
  return total;
}

std::vector<mpz_class> fn_coefficients(int n, int q) {
  std::vector<mpz_class> a{2}, b{0, 1};
  if (n == 0) return a;
  for (int k = 1; k < n; ++k) {
    std::vector<mpz_class> c(b.size() + 1, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + 1] += b[i];
    for (std::size_t i = 0; i < a.size(); ++i) c[i] -= q * a[i];
    a = b;
    b = c;
  }
  return b;
}

bool laurent_identity(const std::vector<mpz_class>& fn, int n, int q) {
  // x^n (x + q/x)^k = x^{n-k} (x^2 + q)^k = sum_j C(k,j) q^j x^{n+k-2j}
  std::vector<mpz_class> acc(2 * n + 1, 0);
  for (std::size_t k = 0; k < fn.size(); ++k) {
    if (fn[k] == 0) continue;
    mpz_class binom = 1, qj = 1;
    for (int j = 0; j <= static_cast<int>(k); ++j) {
      int e = n + static_cast<int>(k) - 2 * j;
      if (e < 0 || e > 2 * n) return false;
      acc[e] += fn[k] * binom * qj;
      binom = binom * (static_cast<int>(k) - j) / (j + 1);
      qj *= q;
    }
  }
  mpz_class qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  acc[2 * n] -= 1;
  acc[0] -= qn;
  for (const auto& c : acc)
    if (c != 0) return false;
  return true;
}

Rational fn_entry_by_promenades(const Truncated& t, int n, int q, int from, int to) {
  auto c = fn_coefficients(n, q);
  Rational s = 0;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) {
      Rational walks = k == 0 ? Rational(from == to ? 1 : 0) : promenade_weight(t, from, to, static_cast<int>(k));
      s += Rational(c[k]) * walks;
    }
  return s;
}

OrbitCount orbit_weights(const btq::Graph& g, const std::vector<btq::Perm>& gens) {
  const int n = g.num_vertices;
  OrbitCount r;
  r.orbit_of.assign(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (r.orbit_of[v] >= 0) continue;
    std::vector<int> stack{v};
    r.orbit_of[v] = next;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& p : gens)
        if (r.orbit_of[p[x]] < 0) {
          r.orbit_of[p[x]] = next;
          stack.push_back(p[x]);
        }
    }
    ++next;
  }
  std::vector<bool> done(next, false);
  for (int v = 0; v < n; ++v) {
    int o = r.orbit_of[v];
    if (done[o]) continue;
    done[o] = true;
    for (int e = 0; e < g.num_edges(); ++e)
      if (g.src[e] == v) ++r.weights[{o, r.orbit_of[g.tgt[e]]}];
  }
  return r;
}

}  // namespace oracle
