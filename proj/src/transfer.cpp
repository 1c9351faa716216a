#include "btq/transfer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace btq {

TransferPolynomial build_fn(int n, int q) {
  if (n < 1) throw std::invalid_argument("build_fn: n must be at least 1");
  if (q < 2) throw std::invalid_argument("build_fn: q must be at least 2");
  std::vector<mpz_class> prev{0, 1};             // f_1 = x
  std::vector<mpz_class> cur{-2 * q, 0, 1};      // f_2 = x^2 - 2q
  if (n == 1) cur = prev;
  for (int k = 3; k <= n; ++k) {
    std::vector<mpz_class> next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= q * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  TransferPolynomial p{n, q, cur};
  if (!laurent_identity_holds(p)) throw std::logic_error("f_n identity failed");
  return p;
}

bool laurent_identity_holds(const TransferPolynomial& p) {
  // sum_k c_k (x^2 + q)^k x^{n-k}
  const int n = p.n;
  std::vector<mpz_class> total(2 * n + 1);
  std::vector<mpz_class> pw{1};  // (x^2 + q)^k
  for (int k = 0; k < static_cast<int>(p.coeffs.size()); ++k) {
    if (k > n) return false;
    for (std::size_t i = 0; i < pw.size(); ++i)
      if (i + (n - k) < total.size()) total[i + n - k] += p.coeffs[k] * pw[i];
      else if (p.coeffs[k] * pw[i] != 0) return false;
    std::vector<mpz_class> next(pw.size() + 2);
    for (std::size_t i = 0; i < pw.size(); ++i) {
      next[i + 2] += pw[i];
      next[i] += p.q * pw[i];
    }
    pw = std::move(next);
  }
  mpz_class qn = 1;
  for (int i = 0; i < n; ++i) qn *= p.q;
  for (int i = 0; i <= 2 * n; ++i) {
    mpz_class want = (i == 2 * n) ? mpz_class(1) : (i == 0 ? qn : mpz_class(0));
    if (total[i] != want) return false;
  }
  return true;
}

QMatrix TransferPolynomial::apply(const QMatrix& m) const {
  const std::size_t n = m.rows();
  QMatrix r(n, n);
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    r = m * r;
    for (std::size_t i = 0; i < n; ++i) r(i, i) += Rational(coeffs[k]);
  }
  return r;
}

std::string TransferPolynomial::to_string() const {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return QPoly(c).to_string();
}

namespace {

Charge horner_lazy(const TransferPolynomial& p, const CFMatrix& m, const VRef& v) {
  Charge r;
  for (int k = static_cast<int>(p.coeffs.size()) - 1; k >= 0; --k) {
    r = apply_operator(m, r);
    if (p.coeffs[k] != 0) r[v] += Rational(p.coeffs[k]);
  }
  for (auto it = r.begin(); it != r.end();) it = (it->second == 0) ? r.erase(it) : std::next(it);
  return r;
}

std::map<VRef, Charge> horner_truncated(const TransferPolynomial& p, const CFMatrix& m,
                                        const std::vector<VRef>& region, int depth) {
  Truncation t = truncate(m, depth);
  std::map<VRef, Charge> out;
  const std::size_t n = t.order.size();
  for (const VRef& v : region) {
    auto it = t.index.find(v);
    if (it == t.index.end()) throw std::invalid_argument("region vertex beyond truncation");
    QVector r(n);
    for (int k = static_cast<int>(p.coeffs.size()) - 1; k >= 0; --k) {
      r = t.m.apply(r);
      r[it->second] += Rational(p.coeffs[k]);
    }
    Charge c;
    for (std::size_t i = 0; i < n; ++i)
      if (r[i] != 0) c[t.order[i]] = r[i];
    out[v] = c;
  }
  return out;
}

}  // namespace

PolyColumns evaluate_poly(const TransferPolynomial& p, const CFMatrix& m, const std::vector<VRef>& region) {
  int reach = 0;
  for (const auto& v : region)
    if (v.cusp >= 0) reach = std::max(reach, v.pos);
  const int depth = reach + 2 * p.n + 2;
  PolyColumns out;
  out.region = region;
  out.columns = horner_truncated(p, m, region, depth);
  auto guard = horner_truncated(p, m, region, depth + 4);
  if (guard != out.columns) throw std::logic_error("evaluate_poly: truncation guard band changed the result");
  for (const auto& v : region)
    if (horner_lazy(p, m, v) != out.columns[v]) throw std::logic_error("evaluate_poly: lazy and dense results differ");
  return out;
}

static Rational power(int q, int n) {
  mpz_class r = 1;
  for (int i = 0; i < n; ++i) r *= q;
  return Rational(r);
}

std::vector<PredictedCusp> predict_cusps_at_Q(const std::vector<CuspDescriptor>& cusps_p, int n, int q) {
  if (n < 1) throw std::invalid_argument("predict_cusps_at_Q: n must be at least 1");
  std::vector<PredictedCusp> out;
  for (int c = 0; c < static_cast<int>(cusps_p.size()); ++c) {
    const auto& cp = cusps_p[c];
    if (cp.outward != 1 || cp.inward != q)
      throw std::invalid_argument("predict_cusps_at_Q: cusp pattern is (" + cp.outward.get_str() + ", " +
                                  cp.inward.get_str() + "), expected (1, " + std::to_string(q) + ")");
    for (int i = 1; i <= n; ++i) {
      PredictedCusp pc;
      pc.p_cusp = c;
      pc.depth = i;
      pc.cusp.inward = power(q, n);
      pc.cusp.outward = 1;
      pc.cusp.attach_weight = 1;
      pc.cusp.label_scheme = cp.label_scheme;
      pc.cusp.label_offset = cp.label_offset + cp.label_step * i;
      pc.cusp.label_step = cp.label_step * n;
      out.push_back(pc);
    }
  }
  return out;
}

TransferReport assemble_candidate(const WCFG& wp, int n) {
  if (!wp.q) throw std::invalid_argument("assemble_candidate: q is not set");
  return assemble_candidate(wp, build_fn(n, *wp.q));
}

TransferReport assemble_candidate(const WCFG& wp, const TransferPolynomial& p) {
  if (!wp.q) throw std::invalid_argument("assemble_candidate: q is not set");
  if (!wp.regular()) throw std::invalid_argument("assemble_candidate: graph is not regular");
  const int n = p.n, q = *wp.q;
  TransferReport r;
  r.n = n;
  r.q = q;
  r.poly = p;
  r.p_graph = canonicalize(wp);
  CFMatrix m = to_matrix(r.p_graph);
  auto predicted = predict_cusps_at_Q(m.cusps, n, q);

  const int np = m.num_core();
  for (int v = 0; v < np; ++v) r.q_origin.push_back(VRef::core(v));
  for (int c = 0; c < static_cast<int>(m.cusps.size()); ++c)
    for (int i = 1; i <= n; ++i) r.q_origin.push_back(VRef{c, i});
  std::map<VRef, int> qidx;
  for (int i = 0; i < static_cast<int>(r.q_origin.size()); ++i) qidx[r.q_origin[i]] = i;
  const int nq = static_cast<int>(r.q_origin.size());

  PolyColumns cols = evaluate_poly(p, m, r.q_origin);
  r.candidate.core_block = QMatrix(nq, nq);
  r.candidate.q = power(q, n).get_num().get_si();
  for (const auto& v : r.q_origin) r.candidate.names.push_back(m.name(v));
  for (const auto& pc : predicted) {
    VRef at{pc.p_cusp, pc.depth};
    VRef first{pc.p_cusp, pc.depth + n};
    CuspDescriptor d = pc.cusp;
    d.attach = qidx.at(at);
    auto it = cols.columns[at].find(first);
    if (it == cols.columns[at].end()) throw std::logic_error("predicted cusp has no attaching entry");
    d.attach_weight = it->second;
    r.candidate.cusps.push_back(d);
  }
  for (int j = 0; j < nq; ++j) {
    const VRef& v = r.q_origin[j];
    for (const auto& [y, val] : cols.columns[v]) {
      auto it = qidx.find(y);
      if (it != qidx.end()) {
        r.candidate.core_block(it->second, j) = val;
        continue;
      }
      bool is_attach = (v.cusp >= 0 && y.cusp == v.cusp && y.pos == v.pos + n);
      if (!is_attach) throw std::logic_error("f_n column leaves the Q region outside a predicted cusp");
    }
  }
  // Pure tail columns must follow the predicted pattern.
  for (int c = 0; c < static_cast<int>(m.cusps.size()); ++c)
    for (int t = n + 1; t <= 3 * n; ++t) {
      Charge want{{VRef{c, t + n}, Rational(1)}, {VRef{c, t - n}, power(q, n)}};
      if (horner_lazy(p, m, VRef{c, t}) != want) throw std::logic_error("cusp compatibility fails");
    }
  // Column sums.
  Rational target = power(q, n) + 1;
  bool sums_ok = true;
  for (int j = 0; j < nq; ++j) {
    Rational s = 0;
    for (int i = 0; i < nq; ++i) s += r.candidate.core_block(i, j);
    for (const auto& c : r.candidate.cusps)
      if (c.attach == j) s += c.attach_weight;
    if (s != target) sums_ok = false;
  }
  r.notes.push_back(sums_ok ? "candidate columns sum to " + target.get_str()
                            : "some candidate columns do not sum to " + target.get_str());
  for (int j = 0; j < nq; ++j)
    for (int i = 0; i < nq; ++i)
      if (r.candidate.core_block(i, j) < 0) r.negative_entries.emplace_back(j, i, r.candidate.core_block(i, j));

  if (t3_criterion(r.p_graph)) {
    r.basis.shell = candidate_shell(r.p_graph);
    r.notes.push_back("tree criterion holds: no ambiguous pairs");
  } else {
    r.basis = obstruction_space(r.p_graph, candidate_shell(r.p_graph));
  }
  // P core ids coincide with the first Q core ids.
  for (int a : bad_set(r.basis))
    for (int b : bad_set(r.basis)) r.bad_pairs.insert({a, b});
  for (const auto& [from, to, val] : r.negative_entries)
    if (!r.bad_pairs.count({from, to}))
      r.notes.push_back("negative entry outside the bad pairs at (" + r.candidate.names[from] + ", " +
                        r.candidate.names[to] + ")");
  return r;
}

TransferReport resolve_ambiguity(const TransferReport& r0, const ObstructionBasis& basis, const ResolveOptions& opt) {
  TransferReport r = r0;
  r.feasible_corrections.clear();
  r.resolution.reset();
  const QMatrix& cand = r.candidate.core_block;
  const int nq = static_cast<int>(cand.rows());
  const int k = static_cast<int>(basis.shell.vertices.size());
  const auto& sv = basis.shell.vertices;

  // Entries that no correction can touch must already be admissible.
  std::set<std::pair<int, int>> touched;  // (row, col) in Q ids
  for (const auto& f : basis.basis)
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x)
        if (f(y, x) != 0) touched.insert({sv[y], sv[x]});
  auto admissible = [&](const Rational& v) {
    if (v < 0) return false;
    Rational scaled = v * opt.entry_denominator;
    return scaled.get_den() == 1;
  };
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j)
      if (!touched.count({i, j}) && !admissible(cand(i, j))) {
        r.status = ResolveStatus::Infeasible;
        r.notes.push_back("entry (" + r.candidate.names[j] + ", " + r.candidate.names[i] +
                          ") is inadmissible and cannot be corrected");
        return r;
      }

  if (basis.dimension == 0) {
    r.status = ResolveStatus::Unique;
    r.resolution = r.candidate;
    r.feasible_corrections.push_back(QMatrix(k, k));
    return r;
  }

  // Echelon basis: parameter i is the correction value at coordinate piv[i].
  const int dim = basis.dimension;
  QMatrix b(dim, k * k);
  for (int i = 0; i < dim; ++i)
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x) b(i, x * k + y) = basis.basis[i](y, x);
  auto piv = rref(b);
  if (static_cast<int>(piv.size()) != dim) throw std::invalid_argument("resolve_ambiguity: dependent basis");
  // Column sums bound each entry.
  std::vector<Rational> colsum(nq);
  for (int j = 0; j < nq; ++j) {
    for (int i = 0; i < nq; ++i) colsum[j] += cand(i, j);
    for (const auto& c : r.candidate.cusps)
      if (c.attach == j) colsum[j] += c.attach_weight;
  }
  // Last parameter affecting each coordinate.
  std::vector<int> last(k * k, -1);
  for (int e = 0; e < k * k; ++e)
    for (int i = 0; i < dim; ++i)
      if (b(i, e) != 0) last[e] = i;
  std::vector<std::vector<int>> check_at(dim);
  for (int e = 0; e < k * k; ++e)
    if (last[e] >= 0) check_at[last[e]].push_back(e);

  std::vector<Rational> c(dim);
  auto entry = [&](int e) {
    int y = e % k, x = e / k;
    Rational v = cand(sv[y], sv[x]);
    for (int i = 0; i <= last[e]; ++i)
      if (b(i, e) != 0) v += c[i] * b(i, e);
    return v;
  };
  bool overflow = false;
  std::function<void(int)> dfs = [&](int i) {
    if (overflow) return;
    if (i == dim) {
      QMatrix corr(k, k);
      for (int e = 0; e < k * k; ++e) {
        Rational v = 0;
        for (int t = 0; t < dim; ++t) v += c[t] * b(t, e);
        corr(e % k, e / k) = v;
      }
      if (opt.require_graphic) {
        QMatrix full = cand;
        for (int y = 0; y < k; ++y)
          for (int x = 0; x < k; ++x) full(sv[y], sv[x]) += corr(y, x);
        for (int a = 0; a < nq; ++a)
          for (int bb = 0; bb < nq; ++bb)
            if ((full(a, bb) != 0) != (full(bb, a) != 0)) return;
      }
      if (r.feasible_corrections.size() >= opt.max_solutions) {
        overflow = true;
        return;
      }
      r.feasible_corrections.push_back(corr);
      return;
    }
    int e = static_cast<int>(piv[i]);
    int y = e % k, x = e / k;
    Rational base = cand(sv[y], sv[x]);
    // Corrected entry runs over the admissible grid in [0, colsum].
    mpz_class steps = mpz_class(colsum[sv[x]] * opt.entry_denominator);
    for (mpz_class s = 0; s <= steps; ++s) {
      Rational val(s, opt.entry_denominator);
      val.canonicalize();
      c[i] = val - base;
      bool ok = true;
      for (int f : check_at[i])
        if (!admissible(entry(f))) {
          ok = false;
          break;
        }
      if (ok) dfs(i + 1);
    }
    c[i] = 0;
  };
  dfs(0);
  if (overflow) r.notes.push_back("solution limit reached; enumeration truncated");
  if (r.feasible_corrections.empty()) {
    r.status = ResolveStatus::Infeasible;
    r.notes.push_back("no nonnegative completion");
  } else if (r.feasible_corrections.size() == 1) {
    r.status = ResolveStatus::Unique;
    CFMatrix res = r.candidate;
    const auto& corr = r.feasible_corrections[0];
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x) res.core_block(sv[y], sv[x]) += corr(y, x);
    r.resolution = res;
  } else {
    r.status = ResolveStatus::Multiple;
    r.notes.push_back(std::to_string(r.feasible_corrections.size()) + " feasible completions");
  }
  return r;
}

std::vector<QVector> column_completions(const TransferReport& r, const ObstructionBasis& basis, int q_column,
                                        const ResolveOptions& opt) {
  const auto& sv = basis.shell.vertices;
  const int k = static_cast<int>(sv.size());
  int x = -1;
  for (int i = 0; i < k; ++i)
    if (sv[i] == q_column) x = i;
  if (x < 0) throw std::invalid_argument("column_completions: column outside the shell");
  const QMatrix& cand = r.candidate.core_block;
  Rational colsum = 0;
  for (std::size_t i = 0; i < cand.rows(); ++i) colsum += cand(i, q_column);
  for (const auto& c : r.candidate.cusps)
    if (c.attach == q_column) colsum += c.attach_weight;

  // Columns F(delta_x), as rows of a matrix whose rank is compared below.
  std::vector<QVector> span;
  for (const auto& f : basis.basis) {
    QVector v(k);
    for (int y = 0; y < k; ++y) v[y] = f(y, x);
    span.push_back(v);
  }
  auto rank_of = [&](const std::vector<QVector>& rows) {
    QMatrix m(rows.size(), k);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int y = 0; y < k; ++y) m(i, y) = rows[i][y];
    return rank(m);
  };
  const std::size_t base_rank = rank_of(span);

  std::vector<QVector> out;
  QVector u(k);
  mpz_class steps = mpz_class(colsum * opt.entry_denominator);
  if (steps < 0) return out;
  std::function<void(int, Rational)> dfs = [&](int y, Rational used) {
    if (y == k) {
      QVector d(k);
      bool zero = true;
      for (int i = 0; i < k; ++i) {
        d[i] = u[i] - cand(sv[i], q_column);
        zero = zero && d[i] == 0;
      }
      if (!zero) {
        auto rows = span;
        rows.push_back(d);
        if (rank_of(rows) != base_rank) return;
      }
      out.push_back(u);
      if (out.size() > opt.max_solutions) throw std::runtime_error("column_completions: solution limit reached");
      return;
    }
    for (mpz_class s = 0; s <= steps; ++s) {
      Rational v(s, opt.entry_denominator);
      v.canonicalize();
      if (used + v > colsum) break;
      u[y] = v;
      dfs(y + 1, used + v);
    }
  };
  dfs(0, 0);
  return out;
}

}  // namespace btq
