// Finite fields F_q (q <= 5), polynomials over them, and rational functions
// with the valuation at infinity.
#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

namespace btq {

class Fq {
public:
  // Shared instance; q in {2, 3, 4, 5}.
  static const Fq& get(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int add(int a, int b) const { return add_[a][b]; }
  int sub(int a, int b) const { return add_[a][neg_[b]]; }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  std::string name(int a) const;  // 0, 1, ..., or w, w+1 for q = 4

private:
  explicit Fq(int q);
  int q_, p_;
  std::vector<std::vector<int>> add_, mul_;
  std::vector<int> neg_, inv_;
};

class Poly {
public:
  Poly() = default;
  Poly(const Fq& f, std::vector<int> c);
  static Poly zero(const Fq& f) { return Poly(f, {}); }
  static Poly constant(const Fq& f, int c) { return Poly(f, {c}); }
  static Poly monomial(const Fq& f, int c, int k);
  static Poly t(const Fq& f) { return monomial(f, 1, 1); }
  // "t^2+t+1", "t(t+1)", "2t-1", ...
  static Poly parse(const Fq& f, const std::string& s);

  const Fq& field() const { return *f_; }
  bool has_field() const { return f_ != nullptr; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  int coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0; }
  int lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<int>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(int c) const;
  Poly shifted(int k) const;  // times t^k, k >= 0
  Poly monic() const;
  // Euclidean division; throws on division by zero.
  static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
  Poly operator/(const Poly& o) const;
  Poly operator%(const Poly& o) const;
  static Poly gcd(Poly a, Poly b);
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }
  bool operator<(const Poly& o) const;
  std::string to_string(const std::string& var = "t") const;

private:
  void trim();
  const Fq* f_ = nullptr;
  std::vector<int> c_;
};

// num/den with gcd 1 and monic denominator.
class RatFunc {
public:
  RatFunc() = default;
  explicit RatFunc(const Poly& p);
  RatFunc(const Poly& num, const Poly& den);
  static RatFunc zero(const Fq& f) { return RatFunc(Poly::zero(f)); }
  static RatFunc one(const Fq& f) { return RatFunc(Poly::constant(f, 1)); }
  static RatFunc t_power(const Fq& f, int k);  // any integer k

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Fq& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.deg() == 0; }
  // deg(den) - deg(num); INT_MAX for zero.
  int valuation() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inverse() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // Laurent coefficients at infinity for exponents kmin..top, keyed by exponent.
  std::map<int, int> laurent(int kmin) const;
  std::string to_string() const;

private:
  void reduce();
  Poly num_, den_;
};

}  // namespace btq
