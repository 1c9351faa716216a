#include "properties.hpp"

#include "btq/btree.hpp"
#include "btq/io.hpp"
#include "btq/transfer.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

namespace props {

using namespace btq;

std::string Result::summary() const {
  std::ostringstream os;
  os << checked << " checked";
  if (!ok) {
    os << ", failures:";
    for (const auto& f : failures) os << " [" << f << "]";
  }
  return os.str();
}

std::vector<std::string> fixture_names(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

Result promenade_oracle(const std::string& dir, int max_n) {
  Result res;
  for (const auto& name : fixture_names(dir)) {
    WCFG w = load_wcfg(dir + "/" + name + ".json");
    if (!w.q) {
      res.fail(name + ": q not set");
      continue;
    }
    CFMatrix m = to_matrix(w);
    std::vector<VRef> core;
    for (int v = 0; v < m.num_core(); ++v) core.push_back(VRef::core(v));
    for (int n = 1; n <= max_n; ++n) {
      oracle::Truncated t = oracle::truncate_by_hand(w, n + 2);
      PolyColumns cols = evaluate_poly(build_fn(n, *w.q), m, core);
      for (int v = 0; v < m.num_core(); ++v)
        for (int u = 0; u < m.num_core(); ++u) {
          ++res.checked;
          const Charge& col = cols.columns[VRef::core(v)];
          auto it = col.find(VRef::core(u));
          Rational got = it == col.end() ? Rational(0) : it->second;
          Rational want = oracle::fn_entry_by_promenades(t, n, *w.q, v, u);
          if (got != want)
            res.fail(name + " n=" + std::to_string(n) + " (" + w.name(v) + " -> " + w.name(u) + "): " +
                     to_string(got) + " vs " + to_string(want));
        }
    }
  }
  return res;
}

Result commutation(const std::string& dir, int max_n) {
  Result res;
  for (const auto& name : fixture_names(dir)) {
    WCFG w = load_wcfg(dir + "/" + name + ".json");
    CFMatrix m = to_matrix(w);
    for (int n = 1; n <= max_n; ++n) {
      std::vector<VRef> centers, region;
      for (int v = 0; v < m.num_core(); ++v) centers.push_back(VRef::core(v));
      for (int c = 0; c < static_cast<int>(m.cusps.size()); ++c)
        for (int d = 1; d <= n; ++d) centers.push_back(VRef{c, d});
      region = centers;
      for (int c = 0; c < static_cast<int>(m.cusps.size()); ++c) region.push_back(VRef{c, n + 1});
      PolyColumns cols = evaluate_poly(build_fn(n, *w.q), m, region);
      for (const auto& v : centers) {
        ++res.checked;
        Charge fn_then_n = apply_operator(m, cols.columns.at(v));
        Charge n_then_fn;
        for (const auto& [y, wt] : m.column(v))
          for (const auto& [z, val] : cols.columns.at(y)) n_then_fn[z] += wt * val;
        for (auto it = n_then_fn.begin(); it != n_then_fn.end();)
          it = it->second == 0 ? n_then_fn.erase(it) : std::next(it);
        if (fn_then_n != n_then_fn) res.fail(name + " n=" + std::to_string(n) + " at " + m.name(v));
      }
    }
  }
  return res;
}

Result laurent(int max_n, int max_q) {
  Result res;
  for (int q = 2; q <= max_q; ++q)
    for (int n = 1; n <= max_n; ++n) {
      ++res.checked;
      TransferPolynomial p = build_fn(n, q);
      std::string tag = "n=" + std::to_string(n) + " q=" + std::to_string(q);
      std::vector<mpz_class> want = oracle::fn_coefficients(n, q);
      std::vector<mpz_class> got = p.coeffs;
      while (!got.empty() && got.back() == 0) got.pop_back();
      while (!want.empty() && want.back() == 0) want.pop_back();
      if (got != want) res.fail(tag + ": coefficients differ from the recurrence");
      if (!laurent_identity_holds(p)) res.fail(tag + ": library identity check");
      if (!oracle::laurent_identity(p.coeffs, n, q)) res.fail(tag + ": binomial expansion");
    }
  return res;
}

namespace {

Poly random_poly(const Fq& f, std::mt19937& rng, int max_deg) {
  std::vector<int> c(max_deg + 1);
  for (auto& x : c) x = static_cast<int>(rng() % f.q());
  return Poly(f, c);
}

BallVertex random_ball(const Fq& f, std::mt19937& rng, int max_depth) {
  BallVertex v = BallVertex::ray(f, 0);
  int steps = static_cast<int>(rng() % (max_depth + 1));
  for (int i = 0; i < steps; ++i) {
    auto nb = neighbors(v);
    v = nb[rng() % nb.size()];
  }
  return v;
}

Mat2RF random_matrix(const Fq& f, std::mt19937& rng) {
  const RatFunc one = RatFunc::one(f), zero = RatFunc::zero(f);
  Mat2RF g = Mat2RF::identity(f);
  int factors = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < factors; ++i) {
    Mat2RF x;
    switch (rng() % 5) {
      case 0: x = {one, RatFunc(random_poly(f, rng, 2)), zero, one}; break;
      case 1: x = {one, zero, RatFunc(random_poly(f, rng, 2)), one}; break;
      case 2: x = {zero, one, one, zero}; break;
      case 3: x = {RatFunc(Poly::constant(f, 1 + static_cast<int>(rng() % (f.q() - 1)))), zero, zero, one}; break;
      default: x = {RatFunc::t_power(f, static_cast<int>(rng() % 5) - 2), zero, zero, one}; break;
    }
    g = g * x;
  }
  return g;
}

}  // namespace

Result moebius_composition(int triples, unsigned seed, int max_depth) {
  Result res;
  std::mt19937 rng(seed);
  for (int i = 0; i < triples; ++i) {
    const Fq& f = Fq::get(2 + static_cast<int>(rng() % 4));
    Mat2RF g = random_matrix(f, rng), h = random_matrix(f, rng);
    BallVertex v = random_ball(f, rng, max_depth);
    ++res.checked;
    BallVertex lhs = moebius_act(g * h, v), rhs = moebius_act(g, moebius_act(h, v));
    if (!(lhs == rhs)) res.fail("q=" + std::to_string(f.q()) + " g=" + g.to_string() + " h=" + h.to_string() +
                                " v=" + v.to_string());
    BallVertex u = neighbors(v)[rng() % (f.q() + 1)];
    if (tree_distance(moebius_act(g, v), moebius_act(g, u)) != 1)
      res.fail("adjacency not preserved by " + g.to_string() + " at " + v.to_string());
  }
  return res;
}

Result reduce_round_trip(int balls, unsigned seed, int max_depth) {
  Result res;
  std::mt19937 rng(seed);
  for (int i = 0; i < balls; ++i) {
    const Fq& f = Fq::get(2 + static_cast<int>(rng() % 4));
    BallVertex v = random_ball(f, rng, max_depth);
    ++res.checked;
    auto [gamma, n] = reduce_to_ray(v);
    std::string tag = "q=" + std::to_string(f.q()) + " v=" + v.to_string();
    if (gamma.det().deg() != 0) {
      res.fail(tag + ": gamma not invertible over F_q[t]");
      continue;
    }
    if (n < 0 || !(moebius_act(gamma, v) == BallVertex::ray(f, n))) res.fail(tag + ": image is not B_0^[-n]");
    if (!(moebius_act(gamma.inverse(), BallVertex::ray(f, n)) == v)) res.fail(tag + ": inverse does not return");
    // Reducing a ray vertex keeps n.
    if (reduce_to_ray(BallVertex::ray(f, n)).second != n) res.fail(tag + ": ray vertex not fixed");
  }
  return res;
}

}  // namespace props
