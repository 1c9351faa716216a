#include "btq/linalg.hpp"

#include <stdexcept>

namespace btq {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ' && ch != '\t') t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational");
  auto slash = t.find('/');
  auto check_int = [&](const std::string& p) {
    std::size_t i = (p.size() > 0 && (p[0] == '-' || p[0] == '+')) ? 1 : 0;
    if (i == p.size()) throw std::invalid_argument("bad rational '" + s + "'");
    for (; i < p.size(); ++i)
      if (p[i] < '0' || p[i] > '9') throw std::invalid_argument("bad rational '" + s + "'");
  };
  if (slash == std::string::npos) {
    check_int(t);
    return Rational(mpz_class(t[0] == '+' ? t.substr(1) : t));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  check_int(num);
  check_int(den);
  mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

QMatrix QMatrix::scaled(const Rational& s) const {
  QMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

Rational QMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<QVector> nullspace(const QMatrix& m) {
  QMatrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

QPoly::QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

QPoly QPoly::x_power(int k) {
  std::vector<Rational> c(k + 1);
  c[k] = 1;
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

Rational QPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return QPoly(std::move(c));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (c_.empty() || o.c_.empty()) return QPoly();
  std::vector<Rational> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(c));
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[k];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += (a < 0) ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (!unit || k == 0) out += mag.get_str();
    if (k >= 1) out += var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

QPoly char_poly(const QMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("char_poly needs a square matrix");
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    Rational tr = (a * mk).trace();
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return QPoly(std::move(c));
}

}  // namespace btq
