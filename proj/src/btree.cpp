#include "btq/btree.hpp"

#include <algorithm>
#include <stdexcept>

namespace btq {

Mat2RF Mat2RF::identity(const Fq& f) { return {RatFunc::one(f), RatFunc::zero(f), RatFunc::zero(f), RatFunc::one(f)}; }

Mat2RF Mat2RF::operator*(const Mat2RF& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

RatFunc Mat2RF::det() const { return a * d - b * c; }

Mat2RF Mat2RF::inverse() const {
  RatFunc dt = det();
  if (dt.is_zero()) throw std::invalid_argument("singular matrix");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

std::string Mat2RF::to_string() const {
  return "(" + a.to_string() + " " + b.to_string() + "; " + c.to_string() + " " + d.to_string() + ")";
}

Mat2P Mat2P::identity(const Fq& f) {
  return {Poly::constant(f, 1), Poly::zero(f), Poly::zero(f), Poly::constant(f, 1)};
}

Mat2P Mat2P::operator*(const Mat2P& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Poly Mat2P::det() const { return a * d - b * c; }

Mat2P Mat2P::inverse() const {
  Poly dt = det();
  if (dt.deg() != 0) throw std::invalid_argument("matrix is not invertible over F_q[t]");
  int inv = a.field().inv(dt.lead());
  return {d.scaled(inv), (-b).scaled(inv), (-c).scaled(inv), a.scaled(inv)};
}

Mat2RF Mat2P::to_rf() const { return {RatFunc(a), RatFunc(b), RatFunc(c), RatFunc(d)}; }

std::string Mat2P::to_string() const {
  return "(" + a.to_string() + " " + b.to_string() + "; " + c.to_string() + " " + d.to_string() + ")";
}

BallVertex::BallVertex(const Fq& f, int r, std::map<int, int> center) : f_(&f), r_(r) {
  for (const auto& [k, c] : center) {
    if (c < 0 || c >= f.q()) throw std::invalid_argument("ball center coefficient outside F_q");
    if (c != 0 && k > -r) c_[k] = c;
  }
}

BallVertex BallVertex::from_center(const RatFunc& a, int r) { return BallVertex(a.field(), r, a.laurent(-r + 1)); }

BallVertex BallVertex::ray(const Fq& f, int n) { return BallVertex(f, -n, {}); }

RatFunc BallVertex::center_rf() const {
  if (c_.empty()) return RatFunc::zero(*f_);
  int kmin = c_.begin()->first, kmax = c_.rbegin()->first;
  int shift = std::min(kmin, 0);
  std::vector<int> v(kmax - shift + 1, 0);
  for (const auto& [k, c] : c_) v[k - shift] = c;
  return RatFunc(Poly(*f_, v)) * RatFunc::t_power(*f_, shift);
}

std::string BallVertex::to_string() const {
  std::string s;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!s.empty()) s += "+";
    std::string cn = f_->name(it->second);
    if (it->first == 0) {
      s += cn;
      continue;
    }
    if (it->second != 1) s += cn;
    s += "t^" + std::to_string(it->first);
  }
  if (s.empty()) s = "0";
  return "B[" + s + ", " + std::to_string(r_) + "]";
}

LatticeVertex to_lattice(const BallVertex& v) {
  const Fq& f = v.field();
  return {{v.center_rf(), RatFunc::t_power(f, -v.r()), RatFunc::one(f), RatFunc::zero(f)}};
}

BallVertex to_ball(const LatticeVertex& l) {
  RatFunc x1 = l.m.a, y1 = l.m.c, x2 = l.m.b, y2 = l.m.d;
  if (l.m.det().is_zero()) throw std::invalid_argument("degenerate lattice");
  // The column whose second entry is largest at infinity goes first.
  if (y1.is_zero() || (!y2.is_zero() && y2.valuation() < y1.valuation())) {
    std::swap(x1, x2);
    std::swap(y1, y2);
  }
  RatFunc x2p = x2 - (y2 / y1) * x1;
  RatFunc a = x1 / y1;
  RatFunc u = x2p / y1;
  return BallVertex::from_center(a, u.valuation());
}

std::vector<BallVertex> neighbors(const BallVertex& v) {
  const Fq& f = v.field();
  std::vector<BallVertex> out;
  for (int c = 0; c < f.q(); ++c) {
    auto center = v.center();
    if (c != 0) center[-v.r()] = c;
    out.emplace_back(f, v.r() + 1, center);
  }
  out.emplace_back(f, v.r() - 1, v.center());
  return out;
}

BallVertex moebius_act(const Mat2RF& g, const BallVertex& v) {
  if (g.det().is_zero()) throw std::invalid_argument("moebius_act: singular matrix");
  return to_ball({g * to_lattice(v).m});
}

BallVertex moebius_act(const Mat2P& g, const BallVertex& v) { return moebius_act(g.to_rf(), v); }

int tree_distance(const BallVertex& u, const BallVertex& v) {
  int m = std::min(u.r(), v.r());
  // Highest exponent where the centers differ, among exponents > -m.
  int top = INT_MIN;
  std::map<int, int> diff;
  const Fq& f = u.field();
  for (const auto& [k, c] : u.center())
    if (k > -m) diff[k] = f.add(diff[k], c);
  for (const auto& [k, c] : v.center())
    if (k > -m) diff[k] = f.sub(diff[k], c);
  for (const auto& [k, c] : diff)
    if (c != 0) top = std::max(top, k);
  int join = (top == INT_MIN) ? m : std::min(m, -top);
  return (u.r() - join) + (v.r() - join);
}

std::pair<Mat2P, int> reduce_to_ray(const BallVertex& v) {
  const Fq& f = v.field();
  Mat2P gamma = Mat2P::identity(f);
  const Mat2P eta{Poly::zero(f), Poly::constant(f, 1), Poly::constant(f, 1), Poly::zero(f)};
  BallVertex cur = v;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<int> poly;
    for (const auto& [k, c] : cur.center())
      if (k >= 0) {
        poly.resize(std::max<std::size_t>(poly.size(), k + 1), 0);
        poly[k] = f.neg(c);
      }
    if (!poly.empty()) {
      Mat2P tr{Poly::constant(f, 1), Poly(f, poly), Poly::zero(f), Poly::constant(f, 1)};
      cur = moebius_act(tr, cur);
      gamma = tr * gamma;
    }
    if (cur.center().empty() && cur.r() <= 0) {
      if (!(moebius_act(gamma, v) == BallVertex::ray(f, -cur.r())))
        throw std::logic_error("reduce_to_ray: verification failed");
      return {gamma, -cur.r()};
    }
    cur = moebius_act(eta, cur);
    gamma = eta * gamma;
  }
  throw std::logic_error("reduce_to_ray did not terminate");
}

}  // namespace btq
