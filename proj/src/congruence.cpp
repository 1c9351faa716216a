#include "btq/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace btq {

QuotientRing::QuotientRing(const Fq& f, const Poly& modulus) : f_(&f), mod_(modulus.monic()) {
  if (mod_.deg() < 1) throw std::invalid_argument("modulus must have positive degree");
  const int d = mod_.deg();
  size_ = 1;
  for (int i = 0; i < d; ++i) size_ *= f.q();
  add_.resize(size_ * size_);
  mul_.resize(size_ * size_);
  neg_.resize(size_);
  inv_.assign(size_, -1);
  std::vector<Poly> lifts;
  for (int x = 0; x < size_; ++x) lifts.push_back(lift(x));
  for (int a = 0; a < size_; ++a) {
    neg_[a] = reduce(-lifts[a]);
    for (int b = 0; b < size_; ++b) {
      add_[a * size_ + b] = reduce(lifts[a] + lifts[b]);
      mul_[a * size_ + b] = reduce(lifts[a] * lifts[b]);
    }
  }
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      if (mul(a, b) == 1) inv_[a] = b;
}

int QuotientRing::reduce(const Poly& p) const {
  Poly r = p % mod_;
  int x = 0;
  for (int k = r.deg(); k >= 0; --k) x = x * f_->q() + r.coeff(k);
  return x;
}

Poly QuotientRing::lift(int x) const {
  std::vector<int> c;
  while (x > 0) {
    c.push_back(x % f_->q());
    x /= f_->q();
  }
  return Poly(*f_, c);
}

int FiniteMatrixGroup::code(const Mat2R& m) const {
  const int s = r_->size();
  return m[0] + s * (m[1] + s * (m[2] + s * m[3]));
}

Mat2R FiniteMatrixGroup::reduce(const Mat2P& g) const {
  return {r_->reduce(g.a), r_->reduce(g.b), r_->reduce(g.c), r_->reduce(g.d)};
}

Mat2R FiniteMatrixGroup::multiply(const Mat2R& x, const Mat2R& y) const {
  const QuotientRing& r = *r_;
  return {r.add(r.mul(x[0], y[0]), r.mul(x[1], y[2])), r.add(r.mul(x[0], y[1]), r.mul(x[1], y[3])),
          r.add(r.mul(x[2], y[0]), r.mul(x[3], y[2])), r.add(r.mul(x[2], y[1]), r.mul(x[3], y[3]))};
}

int FiniteMatrixGroup::index(const Mat2R& m) const {
  auto it = index_.find(code(m));
  return it == index_.end() ? -1 : it->second;
}

int FiniteMatrixGroup::mul(int i, int j) const { return index(multiply(elems_[i], elems_[j])); }

int FiniteMatrixGroup::inv(int i) const { return inv_[i]; }

FiniteMatrixGroup FiniteMatrixGroup::generate(std::shared_ptr<const QuotientRing> r, const std::vector<Mat2P>& gens) {
  FiniteMatrixGroup g;
  g.r_ = std::move(r);
  const QuotientRing& R = *g.r_;
  const Fq& f = R.field();
  std::vector<Mat2R> red;
  for (const auto& x : gens) {
    Mat2R m = g.reduce(x);
    int det = R.sub(R.mul(m[0], m[3]), R.mul(m[1], m[2]));
    if (R.inv(det) < 0) throw std::invalid_argument("generator " + x.to_string() + " is not invertible mod f");
    red.push_back(m);
  }
  Mat2P id = Mat2P::identity(f);
  g.elems_.push_back(g.reduce(id));
  g.lifts_.push_back(id);
  g.index_[g.code(g.elems_[0])] = 0;
  for (std::size_t i = 0; i < g.elems_.size(); ++i)
    for (std::size_t k = 0; k < red.size(); ++k) {
      Mat2R y = g.multiply(red[k], g.elems_[i]);
      int c = g.code(y);
      if (g.index_.count(c)) continue;
      g.index_[c] = static_cast<int>(g.elems_.size());
      g.elems_.push_back(y);
      g.lifts_.push_back(gens[k] * g.lifts_[i]);
    }
  g.inv_.assign(g.elems_.size(), -1);
  for (std::size_t i = 0; i < g.elems_.size(); ++i) {
    const Mat2R& m = g.elems_[i];
    int dinv = R.inv(R.sub(R.mul(m[0], m[3]), R.mul(m[1], m[2])));
    Mat2R in{R.mul(dinv, m[3]), R.mul(dinv, R.neg(m[1])), R.mul(dinv, R.neg(m[2])), R.mul(dinv, m[0])};
    g.inv_[i] = g.index(in);
    if (g.inv_[i] < 0) throw std::logic_error("group closure is missing an inverse");
  }
  return g;
}

std::vector<int> FiniteMatrixGroup::embed(const FiniteMatrixGroup& h) const {
  std::vector<int> out;
  for (int i = 0; i < h.order(); ++i) {
    int j = index(h.element(i));
    if (j < 0) throw std::invalid_argument("embed: element outside the group");
    out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CosetSpace left_cosets(const FiniteMatrixGroup& g, const std::vector<int>& h) {
  CosetSpace cs;
  cs.coset_of.assign(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (cs.coset_of[x] >= 0) continue;
    int id = static_cast<int>(cs.members.size());
    std::vector<int> mem;
    for (int s : h) {
      int y = g.mul(x, s);
      if (cs.coset_of[y] >= 0 && cs.coset_of[y] != id) throw std::logic_error("cosets overlap");
      cs.coset_of[y] = id;
      mem.push_back(y);
    }
    std::sort(mem.begin(), mem.end());
    mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
    cs.members.push_back(std::move(mem));
  }
  return cs;
}

namespace {

Mat2P upper(const Fq& f, const Poly& b) { return {Poly::constant(f, 1), b, Poly::zero(f), Poly::constant(f, 1)}; }
Mat2P lower(const Fq& f, int c) { return {Poly::constant(f, 1), Poly::zero(f), Poly::constant(f, c), Poly::constant(f, 1)}; }
Mat2P diag(const Fq& f, int a, int d) { return {Poly::constant(f, a), Poly::zero(f), Poly::zero(f), Poly::constant(f, d)}; }
Mat2P eta(const Fq& f) { return {Poly::zero(f), Poly::constant(f, 1), Poly::constant(f, 1), Poly::zero(f)}; }

std::vector<Mat2P> constant_borel(const Fq& f) {
  std::vector<Mat2P> g;
  for (int a = 1; a < f.q(); ++a) {
    g.push_back(diag(f, a, 1));
    g.push_back(diag(f, 1, a));
    g.push_back(upper(f, Poly::constant(f, a)));
  }
  return g;
}

}  // namespace

std::vector<Mat2P> gamma1_generators(const Fq& f, const Poly& modulus) {
  std::vector<Mat2P> g = constant_borel(f);
  g.push_back(lower(f, 1));
  g.push_back(eta(f));
  for (int k = 1; k <= modulus.deg(); ++k) g.push_back(upper(f, Poly::monomial(f, 1, k)));
  return g;
}

std::vector<Mat2P> stabilizer_generators(const Fq& f, int n) {
  if (n < 0) throw std::invalid_argument("stabilizer_generators: negative type");
  std::vector<Mat2P> g = constant_borel(f);
  if (n == 0) {
    g.push_back(lower(f, 1));
    g.push_back(eta(f));
    return g;
  }
  for (int k = 1; k <= n; ++k)
    for (int c = 1; c < f.q(); ++c) g.push_back(upper(f, Poly::monomial(f, c, k)));
  return g;
}

std::vector<Mat2P> edge_stabilizer_generators(const Fq& f, int n) {
  if (n == 0) return constant_borel(f);
  return stabilizer_generators(f, n);
}

FiniteMatrixGroup stabilizer_image(std::shared_ptr<const QuotientRing> r, int n) {
  const Fq& f = r->field();
  return FiniteMatrixGroup::generate(std::move(r), stabilizer_generators(f, n));
}

BallVertex CongruenceQuotient::ball(int v, int k) const {
  const auto& mem = layers[type[v]].members[local[v]];
  return moebius_act(gbar->lift(mem[k % mem.size()]), BallVertex::ray(ring->field(), type[v]));
}

int CongruenceQuotient::locate(const BallVertex& b) const {
  auto [gamma, n] = reduce_to_ray(b);
  if (n > depth) return -1;
  int g = gbar->index_of(gamma.inverse());
  if (g < 0) throw std::logic_error("locate: reduction left the image group");
  return vertex(n, g);
}

WeightMap CongruenceQuotient::weights() const {
  WeightMap w;
  for (int v = 0; v < num_vertices(); ++v)
    for (int u : nbrs[v]) w[{v, u}] += 1;
  return w;
}

std::string CongruenceQuotient::name(int v) const {
  return "v" + std::to_string(type[v]) + "_" + std::to_string(local[v]);
}

CongruenceQuotient congruence_quotient(int q, const Poly& f_in, int depth) {
  const Fq& F = Fq::get(q);
  if (!f_in.has_field() || &f_in.field() != &F) throw std::invalid_argument("congruence_quotient: f is not over F_q");
  Poly f = f_in.monic();
  CongruenceQuotient cq;
  cq.q = q;
  cq.f = f;
  cq.depth = depth;
  if (f.deg() < 1) throw std::invalid_argument("congruence_quotient: f must have positive degree");
  cq.ring = std::make_shared<QuotientRing>(F, f);
  if (cq.ring->size() > 8)
    throw std::invalid_argument("congruence_quotient: unsupported q^deg f = " + std::to_string(cq.ring->size()) +
                                " (at most 8)");
  if (depth <= f.deg()) throw std::invalid_argument("congruence_quotient: depth must exceed deg f");
  if (depth > 12) throw std::invalid_argument("congruence_quotient: depth at most 12");
  cq.gbar = std::make_shared<FiniteMatrixGroup>(FiniteMatrixGroup::generate(cq.ring, gamma1_generators(F, f)));
  const FiniteMatrixGroup& G = *cq.gbar;

  for (int n = 0; n <= depth; ++n) {
    auto gens = stabilizer_generators(F, n);
    for (const auto& s : gens)
      if (!(moebius_act(s, BallVertex::ray(F, n)) == BallVertex::ray(F, n)))
        throw std::logic_error("stabilizer generator moves its ball");
    cq.stab.push_back(G.embed(FiniteMatrixGroup::generate(cq.ring, gens)));
    cq.layers.push_back(left_cosets(G, cq.stab.back()));
    cq.layer_offset.push_back(n == 0 ? 0 : cq.layer_offset[n - 1] + cq.layer_count(n - 1));
    for (int i = 0; i < cq.layer_count(n); ++i) {
      cq.type.push_back(n);
      cq.local.push_back(i);
    }
  }

  // Tree neighbours of B_n as translates of the adjacent ray balls.
  std::vector<std::vector<std::pair<Mat2P, int>>> moves(depth + 1);
  for (int c = 0; c < q; ++c) moves[0].push_back({lower(F, c), 1});
  moves[0].push_back({eta(F), 1});
  for (int n = 1; n <= depth; ++n) {
    for (int c = 0; c < q; ++c) moves[n].push_back({upper(F, Poly::monomial(F, c, n)), n - 1});
    if (n < depth) moves[n].push_back({Mat2P::identity(F), n + 1});
  }
  for (int n = 0; n <= depth; ++n) {
    std::set<BallVertex> got, want;
    for (const auto& [m, k] : moves[n]) got.insert(moebius_act(m, BallVertex::ray(F, k)));
    for (const auto& b : neighbors(BallVertex::ray(F, n)))
      if (b.r() >= -depth) want.insert(b);
    if (got != want || got.size() != moves[n].size()) throw std::logic_error("neighbour moves do not match the tree");
  }

  cq.nbrs.resize(cq.num_vertices());
  for (int n = 0; n <= depth; ++n) {
    std::vector<int> mvs;
    for (const auto& [m, k] : moves[n]) mvs.push_back(G.index(G.reduce(m)));
    for (int i = 0; i < cq.layer_count(n); ++i) {
      int v = cq.layer_offset[n] + i;
      std::vector<int> first;
      for (int g : cq.layers[n].members[i]) {
        std::vector<int> nb;
        for (std::size_t j = 0; j < mvs.size(); ++j) nb.push_back(cq.vertex(moves[n][j].second, G.mul(g, mvs[j])));
        std::sort(nb.begin(), nb.end());
        if (first.empty())
          first = nb;
        else if (nb != first)
          throw std::logic_error("neighbour multiset depends on the coset representative");
      }
      cq.nbrs[v] = first;
    }
  }

  cq.graph.num_vertices = cq.num_vertices();
  for (int v = 0; v < cq.num_vertices(); ++v) cq.graph.labels.push_back(cq.name(v));
  for (int n = 0; n < depth; ++n) {
    auto e = G.embed(FiniteMatrixGroup::generate(cq.ring, edge_stabilizer_generators(F, n)));
    CosetSpace ec = left_cosets(G, e);
    cq.edge_layer_counts.push_back(static_cast<int>(ec.members.size()));
    for (const auto& mem : ec.members) cq.graph.add_edge(cq.vertex(n, mem[0]), cq.vertex(n + 1, mem[0]));
  }
  // Every adjacency of the neighbour lists is an edge coset and conversely.
  std::set<std::pair<int, int>> from_edges, from_nbrs;
  for (int a = 0; a < cq.graph.num_edges(); ++a) from_edges.insert({cq.graph.src[a], cq.graph.tgt[a]});
  for (int v = 0; v < cq.num_vertices(); ++v)
    for (int u : cq.nbrs[v]) from_nbrs.insert({v, u});
  if (from_edges != from_nbrs) throw std::logic_error("edge cosets disagree with neighbour lists");
  return cq;
}

bool layer_identities_hold(const CongruenceQuotient& cq, std::vector<std::string>* why) {
  bool ok = true;
  auto fail = [&](const std::string& s) {
    ok = false;
    if (why) why->push_back(s);
  };
  const int d = cq.f.deg();
  auto M = [&](int n) { return static_cast<long>(cq.layer_count(n)); };
  if (d > 1 && (cq.q + 1) * M(0) != cq.q * M(1))
    fail("(q+1)M0 = " + std::to_string((cq.q + 1) * M(0)) + " but qM1 = " + std::to_string(cq.q * M(1)));
  for (int k = 2; k < d && k <= cq.depth; ++k)
    if (M(k - 1) != cq.q * M(k))
      fail("M" + std::to_string(k - 1) + " = " + std::to_string(M(k - 1)) + " but qM" + std::to_string(k) + " = " +
           std::to_string(cq.q * M(k)));
  for (int n = std::max(1, d - 1) + 1; n <= cq.depth; ++n)
    if (M(n) != M(n - 1)) fail("M" + std::to_string(n) + " differs from M" + std::to_string(n - 1));
  return ok;
}

Graph o_graph(const CongruenceQuotient& cq) {
  if (cq.q != 2 || cq.f.deg() != 2) throw std::invalid_argument("o_graph: needs q = 2 and quadratic f");
  Graph g;
  g.num_vertices = cq.layer_count(0);
  for (int i = 0; i < cq.layer_count(1); ++i) {
    std::vector<int> down;
    for (int u : cq.nbrs[cq.layer_offset[1] + i])
      if (cq.type[u] == 0) down.push_back(u);
    if (down.size() != 2) throw std::logic_error("type-1 vertex without two type-0 neighbours");
    g.add_edge(down[0], down[1]);
  }
  return g;
}

TruncatedQuotient truncated(const CongruenceQuotient& cq, int reps_per_vertex) {
  TruncatedQuotient tq;
  tq.q = cq.q;
  tq.graph.num_vertices = cq.num_vertices();
  tq.weights = cq.weights();
  std::set<std::pair<int, int>> seen;
  for (const auto& [k, val] : tq.weights) {
    auto [v, u] = k;
    if (v < u && seen.insert({v, u}).second) tq.graph.add_edge(v, u);
  }
  for (int v = 0; v < cq.num_vertices(); ++v) {
    tq.names.push_back(cq.name(v));
    tq.type.push_back(cq.type[v]);
    tq.complete.push_back(cq.complete(v));
    int k = std::min<int>(reps_per_vertex, cq.layers[cq.type[v]].members[cq.local[v]].size());
    std::vector<BallVertex> r;
    for (int i = 0; i < k; ++i) r.push_back(cq.ball(v, i));
    tq.reps.push_back(std::move(r));
  }
  tq.graph.labels = tq.names;
  auto shared = std::make_shared<const CongruenceQuotient>(cq);
  tq.locate = [shared](const BallVertex& b) { return shared->locate(b); };
  return tq;
}

StageResult quotient_stage(const TruncatedQuotient& tq, const std::vector<Mat2RF>& gens) {
  const int n = tq.num_vertices();
  const int ng = static_cast<int>(gens.size());
  // images[h][v]: -1 beyond the truncation.
  std::vector<std::vector<int>> images(ng, std::vector<int>(n, -1));
  for (int h = 0; h < ng; ++h)
    for (int v = 0; v < n; ++v) {
      std::set<int> img;
      for (const auto& b : tq.reps[v]) img.insert(tq.locate(moebius_act(gens[h], b)));
      if (img.size() != 1)
        throw std::invalid_argument("non-normalizing generator " + gens[h].to_string() + ": representatives of " +
                                    tq.names[v] + " disagree");
      images[h][v] = *img.begin();
    }

  std::vector<bool> in(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!in[v]) continue;
      for (int h = 0; h < ng; ++h)
        if (images[h][v] < 0 || !in[images[h][v]]) {
          in[v] = false;
          changed = true;
          break;
        }
    }
  }
  StageResult res;
  std::vector<int> sub_of(n, -1);
  for (int v = 0; v < n; ++v)
    if (in[v]) {
      sub_of[v] = static_cast<int>(res.domain.size());
      res.domain.push_back(v);
    }
  const int k = static_cast<int>(res.domain.size());
  if (k == 0) throw std::invalid_argument("quotient_stage: no invariant vertices; truncation too shallow");

  Graph sub;
  sub.num_vertices = k;
  for (int a = 0; a < tq.graph.num_edges(); a += 1) {
    int u = tq.graph.src[a], v = tq.graph.tgt[a];
    if (in[u] && in[v] && tq.graph.rev[a] > a) sub.add_edge(sub_of[u], sub_of[v]);
  }
  auto wt = [&](int v, int u) {
    auto it = tq.weights.find({v, u});
    return it == tq.weights.end() ? Rational(0) : it->second;
  };
  // A vertex is complete here when all its neighbours survived.
  std::vector<bool> full(n, false);
  for (int v : res.domain) {
    bool ok = tq.complete[v];
    for (auto it = tq.weights.lower_bound({v, INT_MIN}); it != tq.weights.end() && it->first.first == v; ++it)
      if (!in[it->first.second]) ok = false;
    full[v] = ok;
  }

  std::vector<std::pair<Perm, Perm>> perms;
  for (int h = 0; h < ng; ++h) {
    Perm p(k);
    std::vector<bool> hit(k, false);
    for (int i = 0; i < k; ++i) {
      p[i] = sub_of[images[h][res.domain[i]]];
      if (hit[p[i]]) throw std::invalid_argument("non-normalizing generator " + gens[h].to_string() + ": not injective");
      hit[p[i]] = true;
    }
    for (int v : res.domain) {
      int hv = images[h][v];
      if (!full[v] || !full[hv]) continue;
      for (int u : res.domain)
        if (wt(v, u) != wt(hv, images[h][u]))
          throw std::invalid_argument("non-normalizing generator " + gens[h].to_string() + ": weights of " +
                                      tq.names[v] + " not preserved");
    }
    perms.push_back({p, induced_edge_perm(sub, p)});
  }
  GroupAction act = GroupAction::generate(sub, perms);
  res.group_order = act.order();
  res.fine = fine_quotient(sub, act);

  // Renumber actual classes by first appearance.
  std::map<int, int> cls;
  res.class_of.assign(n, -1);
  for (int i = 0; i < k; ++i) {
    int c = res.fine.vertex_class[i];
    auto it = cls.emplace(c, static_cast<int>(cls.size())).first;
    res.class_of[res.domain[i]] = it->second;
  }
  const int nc = static_cast<int>(cls.size());
  TruncatedQuotient& out = res.quotient;
  out.q = tq.q;
  out.graph.num_vertices = nc;
  out.names.resize(nc);
  out.type.assign(nc, -2);
  out.reps.resize(nc);
  out.complete.assign(nc, true);
  std::vector<std::optional<std::map<int, Rational>>> row(nc);
  std::vector<std::map<int, Rational>> partial(nc);
  std::vector<bool> named(nc, false);
  for (int v : res.domain) {
    int c = res.class_of[v];
    if (!named[c]) {
      out.names[c] = tq.names[v];
      named[c] = true;
    }
    out.type[c] = (out.type[c] == -2 || out.type[c] == tq.type[v]) ? tq.type[v] : -1;
    if (out.reps[c].size() < 4)
      for (const auto& b : tq.reps[v])
        if (out.reps[c].size() < 4) out.reps[c].push_back(b);
    std::map<int, Rational> r;
    for (auto it = tq.weights.lower_bound({v, INT_MIN}); it != tq.weights.end() && it->first.first == v; ++it)
      if (in[it->first.second]) r[res.class_of[it->first.second]] += it->second;
    if (!full[v]) {
      out.complete[c] = false;
      if (partial[c].empty()) partial[c] = r;
      continue;
    }
    if (!row[c])
      row[c] = r;
    else if (*row[c] != r)
      throw std::invalid_argument("quotient_stage: members of class " + out.names[c] + " disagree on weights");
  }
  for (int c = 0; c < nc; ++c) {
    const auto& r = out.complete[c] ? *row[c] : partial[c];
    for (const auto& [u, val] : r)
      if (val != 0) out.weights[{c, u}] = val;
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [key, val] : out.weights) {
    auto [c, u] = key;
    if (c == u) continue;
    auto e = std::minmax(c, u);
    if (seen.insert(e).second) out.graph.add_edge(e.first, e.second);
  }
  out.graph.labels = out.names;
  auto prev = tq.locate;
  auto class_of = res.class_of;
  out.locate = [prev, class_of](const BallVertex& b) {
    int v = prev(b);
    return v < 0 ? -1 : class_of[v];
  };
  return res;
}

WCFG to_wcfg(const TruncatedQuotient& tq) {
  const int n = tq.num_vertices();
  QMatrix m(n, n);
  for (const auto& [k, val] : tq.weights) m(k.second, k.first) = val;
  std::set<int> boundary;
  for (int v = 0; v < n; ++v)
    if (!tq.complete[v]) boundary.insert(v);
  DetectedCusps d = detect_cusps(m, boundary, std::make_pair(Rational(tq.q), Rational(1)));
  if (!d.non_canonical.empty()) {
    std::string s;
    for (int v : d.non_canonical) s += " " + tq.names[v];
    throw std::runtime_error("to_wcfg: incomplete vertices that do not start a cusp:" + s);
  }
  return canonicalize(wcfg_from_detection(m, d, tq.names, tq.q));
}

namespace {

bool in_gamma1(const Mat2RF& g) {
  for (const RatFunc* x : {&g.a, &g.b, &g.c, &g.d})
    if (!x->is_polynomial()) return false;
  RatFunc d = g.det();
  return !d.is_zero() && d.is_polynomial() && d.num().deg() == 0;
}

}  // namespace

WCFG quotient_by_overgroup(const CongruenceQuotient& cq, const std::vector<Mat2RF>& generators) {
  std::vector<Mat2RF> first, second;
  for (const auto& g : generators) (in_gamma1(g) ? first : second).push_back(g);
  TruncatedQuotient tq = truncated(cq);
  if (!first.empty()) tq = quotient_stage(tq, first).quotient;
  if (!second.empty()) tq = quotient_stage(tq, second).quotient;
  return to_wcfg(tq);
}

std::vector<Mat2RF> gamma0_generators(const CongruenceQuotient& cq) {
  const FiniteMatrixGroup& G = *cq.gbar;
  std::vector<int> borel;
  for (int i = 0; i < G.order(); ++i)
    if (G.element(i)[2] == 0) borel.push_back(i);
  std::vector<int> gens;
  std::set<int> closure{G.identity()};
  for (int x : borel) {
    if (closure.count(x)) continue;
    gens.push_back(x);
    std::vector<int> todo(closure.begin(), closure.end());
    for (std::size_t i = 0; i < todo.size(); ++i)
      for (int g : gens) {
        int y = G.mul(g, todo[i]);
        if (closure.insert(y).second) todo.push_back(y);
      }
  }
  std::vector<Mat2RF> out;
  for (int g : gens) out.push_back(G.lift(g).to_rf());
  return out;
}

std::vector<Mat2RF> atkin_lehner_generators(const Fq& fq, const Poly& f_in) {
  Poly f = f_in.monic();
  Poly one = Poly::constant(fq, 1), t = Poly::t(fq);
  std::vector<Mat2RF> out;
  out.push_back(Mat2P{Poly::zero(fq), -one, f, Poly::zero(fq)}.to_rf());
  if (f == t * (t + one)) out.push_back(Mat2P{t, one, f, t}.to_rf());
  return out;
}

}  // namespace btq
