// The Bruhat-Tits tree at the infinite place of F_q(t): closed balls,
// lattice classes and the action of 2x2 matrices.
#pragma once

#include "btq/ff.hpp"

#include <string>
#include <utility>
#include <vector>

namespace btq {

struct Mat2RF {
  RatFunc a, b, c, d;  // (a b; c d)

  static Mat2RF identity(const Fq& f);
  Mat2RF operator*(const Mat2RF& o) const;
  RatFunc det() const;
  Mat2RF inverse() const;
  bool operator==(const Mat2RF& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  std::string to_string() const;
};

struct Mat2P {
  Poly a, b, c, d;

  static Mat2P identity(const Fq& f);
  Mat2P operator*(const Mat2P& o) const;
  Poly det() const;
  // Requires a constant nonzero determinant.
  Mat2P inverse() const;
  Mat2RF to_rf() const;
  bool operator==(const Mat2P& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  std::string to_string() const;
};

// B_a^{[r]}: center a truncated to exponents > -r, radius |t^{-r}|.
class BallVertex {
public:
  BallVertex() = default;
  BallVertex(const Fq& f, int r, std::map<int, int> center);
  static BallVertex from_center(const RatFunc& a, int r);
  static BallVertex ray(const Fq& f, int n);  // B_0^{[-n]}

  const Fq& field() const { return *f_; }
  int r() const { return r_; }
  const std::map<int, int>& center() const { return c_; }  // exponent -> coefficient
  RatFunc center_rf() const;
  bool operator==(const BallVertex& o) const { return r_ == o.r_ && c_ == o.c_; }
  bool operator<(const BallVertex& o) const { return r_ != o.r_ ? r_ < o.r_ : c_ < o.c_; }
  std::string to_string() const;

private:
  const Fq* f_ = nullptr;
  int r_ = 0;
  std::map<int, int> c_;
};

// Lattice generated by the columns of m, up to scaling.
struct LatticeVertex {
  Mat2RF m;
};

LatticeVertex to_lattice(const BallVertex& v);
BallVertex to_ball(const LatticeVertex& l);

// q sub-balls followed by the super-ball.
std::vector<BallVertex> neighbors(const BallVertex& v);
BallVertex moebius_act(const Mat2RF& g, const BallVertex& v);
BallVertex moebius_act(const Mat2P& g, const BallVertex& v);
// Distance in the tree.
int tree_distance(const BallVertex& u, const BallVertex& v);

// gamma in GL_2(F_q[t]) and n >= 0 with gamma * v = B_0^{[-n]}.
std::pair<Mat2P, int> reduce_to_ray(const BallVertex& v);

}  // namespace btq
