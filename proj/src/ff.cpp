#include "btq/ff.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <stdexcept>

namespace btq {

const Fq& Fq::get(int q) {
  static std::map<int, std::unique_ptr<Fq>> cache;
  if (q != 2 && q != 3 && q != 4 && q != 5) throw std::invalid_argument("unsupported field size " + std::to_string(q));
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<Fq>(new Fq(q))).first;
  return *it->second;
}

Fq::Fq(int q) : q_(q), p_(q == 4 ? 2 : q) {
  add_.assign(q, std::vector<int>(q));
  mul_.assign(q, std::vector<int>(q));
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (q == 4) {
        // Elements are bit vectors over F_2 in the basis (1, w), w^2 = w + 1.
        add_[a][b] = a ^ b;
        int a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
        int c0 = (a0 * b0 + a1 * b1) & 1;
        int c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1;
        mul_[a][b] = c0 | (c1 << 1);
      } else {
        add_[a][b] = (a + b) % q;
        mul_[a][b] = (a * b) % q;
      }
    }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (add_[a][b] == 0) neg_[a] = b;
      if (mul_[a][b] == 1) inv_[a] = b;
    }
  }
}

int Fq::inv(int a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  return inv_[a];
}

std::string Fq::name(int a) const {
  if (q_ != 4) return std::to_string(a);
  static const char* names[] = {"0", "1", "w", "w+1"};
  return names[a];
}

Poly::Poly(const Fq& f, std::vector<int> c) : f_(&f), c_(std::move(c)) {
  for (int& x : c_)
    if (x < 0 || x >= f.q()) throw std::invalid_argument("coefficient outside F_q");
  trim();
}

Poly Poly::monomial(const Fq& f, int c, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  std::vector<int> v(k + 1, 0);
  v[k] = c;
  return Poly(f, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<int> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->add(coeff(i), o.coeff(i));
  return Poly(*f_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<int> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->sub(coeff(i), o.coeff(i));
  return Poly(*f_, std::move(c));
}

Poly Poly::operator-() const { return Poly::zero(*f_) - *this; }

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly::zero(*f_);
  std::vector<int> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = f_->add(c[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return Poly(*f_, std::move(c));
}

Poly Poly::scaled(int k) const {
  std::vector<int> c(c_);
  for (int& x : c) x = f_->mul(x, k);
  return Poly(*f_, std::move(c));
}

Poly Poly::shifted(int k) const {
  if (c_.empty()) return *this;
  std::vector<int> c(k, 0);
  c.insert(c.end(), c_.begin(), c_.end());
  return Poly(*f_, std::move(c));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(f_->inv(lead()));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const Fq& f = *a.f_;
  std::vector<int> r = a.c_;
  int db = b.deg();
  std::vector<int> qv(std::max(0, a.deg() - db + 1), 0);
  int inv_lead = f.inv(b.lead());
  for (int k = a.deg(); k >= db; --k) {
    int c = f.mul(r[k], inv_lead);
    if (c == 0) continue;
    qv[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j] = f.sub(r[k - db + j], f.mul(c, b.c_[j]));
  }
  quot = Poly(f, std::move(qv));
  rem = Poly(f, std::move(r));
}

Poly Poly::operator/(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return q;
}

Poly Poly::operator%(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return r;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool Poly::operator<(const Poly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (int k = deg(); k >= 0; --k)
    if (c_[k] != o.c_[k]) return c_[k] < o.c_[k];
  return false;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = deg(); k >= 0; --k) {
    int c = c_[k];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string cn = f_->name(c);
    bool paren = cn.find('+') != std::string::npos;
    if (k == 0)
      out += cn;
    else {
      if (c != 1) out += paren ? "(" + cn + ")" : cn;
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace {

struct PolyParser {
  const Fq& f;
  std::string s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("polynomial '" + s + "': " + why + " at position " + std::to_string(i));
  }
  char peek() const { return i < s.size() ? s[i] : '\0'; }
  Poly expr() {
    Poly acc = Poly::zero(f);
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (s[i++] == '-');
    acc = neg ? -term() : term();
    while (peek() == '+' || peek() == '-') {
      bool minus = (s[i++] == '-');
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }
  Poly term() {
    Poly acc = factor();
    while (true) {
      if (peek() == '*') {
        ++i;
        acc = acc * factor();
      } else if (peek() == '(' || peek() == 't' || peek() == 'w' || std::isdigit(static_cast<unsigned char>(peek()))) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }
  Poly factor() {
    Poly base = atom();
    if (peek() == '^') {
      ++i;
      int e = number();
      Poly r = Poly::constant(f, 1);
      for (int k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }
  int number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s[i++] - '0');
    return v;
  }
  Poly atom() {
    char c = peek();
    if (c == 't') {
      ++i;
      return Poly::t(f);
    }
    if (c == 'w') {
      if (f.q() != 4) fail("'w' only exists in F_4");
      ++i;
      return Poly::constant(f, 2);
    }
    if (c == '(') {
      ++i;
      Poly p = expr();
      if (peek() != ')') fail("expected ')'");
      ++i;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = number();
      // Integers map through the prime field.
      int r = 0;
      for (int k = 0; k < v % f.p(); ++k) r = f.add(r, 1);
      return Poly::constant(f, r);
    }
    fail("unexpected character");
  }
};

}  // namespace

Poly Poly::parse(const Fq& f, const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty polynomial");
  PolyParser p{f, t};
  Poly r = p.expr();
  if (p.i != t.size()) p.fail("trailing characters");
  return r;
}

RatFunc::RatFunc(const Poly& p) : num_(p), den_(Poly::constant(p.field(), 1)) {}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

RatFunc RatFunc::t_power(const Fq& f, int k) {
  if (k >= 0) return RatFunc(Poly::monomial(f, 1, k));
  return RatFunc(Poly::constant(f, 1), Poly::monomial(f, 1, -k));
}

void RatFunc::reduce() {
  const Fq& f = num_.field();
  if (num_.is_zero()) {
    den_ = Poly::constant(f, 1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.deg() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  int l = den_.lead();
  if (l != 1) {
    int inv = f.inv(l);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

int RatFunc::valuation() const {
  if (num_.is_zero()) return INT_MAX;
  return den_.deg() - num_.deg();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const { return RatFunc::one(field()) / *this; }

std::map<int, int> RatFunc::laurent(int kmin) const {
  std::map<int, int> out;
  if (num_.is_zero()) return out;
  int top = num_.deg() - den_.deg();
  if (top < kmin) return out;
  int s = std::max(0, -kmin);
  Poly quot = num_.shifted(s) / den_;
  for (int k = kmin; k <= top; ++k) {
    int c = quot.coeff(k + s);
    if (c != 0) out[k] = c;
  }
  return out;
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace btq
