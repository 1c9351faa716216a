// Exact rational scalars, dense matrices and univariate polynomials.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace btq {

using Rational = mpq_class;

// "p/q" or "p"; whitespace tolerated. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

using QVector = std::vector<Rational>;

class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const Rational& s) const;
  QVector apply(const QVector& v) const;
  Rational trace() const;
  bool is_zero() const;
  bool operator==(const QMatrix& o) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
// Basis of {x : m x = 0}, one vector per free column, with a 1 at that column.
std::vector<QVector> nullspace(const QMatrix& m);
std::size_t rank(QMatrix m);

// Coefficients low to high.
class QPoly {
public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> c);
  static QPoly x_power(int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational eval(const Rational& x) const;
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Rational> c_;
};

// det(xI - m), Faddeev-LeVerrier.
QPoly char_poly(const QMatrix& m);

}  // namespace btq
