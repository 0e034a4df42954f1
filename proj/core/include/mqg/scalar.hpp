#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mqg {

// Parameter symbols. Total order: a < h < eps < q12 < q13 < ... < p12 < ... < omega < free names.
// q_ij exists only for i<j; q^{ji} is written as the inverse of q_ij.
class Var {
 public:
  enum class Kind : uint8_t { A = 0, H = 1, Eps = 2, Q = 3, P = 4, Omega = 5, Free = 6 };

  constexpr Var() = default;
  static Var a() { return Var(make(Kind::A, 0)); }
  static Var h() { return Var(make(Kind::H, 0)); }
  static Var eps() { return Var(make(Kind::Eps, 0)); }
  static Var omega() { return Var(make(Kind::Omega, 0)); }
  static Var q(int i, int j);
  static Var p(int i, int j);
  static Var named(std::string_view s);  // free coefficient symbol, at most 7 chars
  // accepts a, h, eps, omega, qIJ / q_IJ, pIJ / p_IJ (I<J) and free names
  static Var parse(std::string_view s);

  Kind kind() const { return static_cast<Kind>(key_ >> 56); }
  std::pair<int, int> index() const;  // (i,j) for q/p kinds
  std::string name() const;
  uint64_t key() const { return key_; }

  auto operator<=>(const Var&) const = default;

 private:
  explicit constexpr Var(uint64_t k) : key_(k) {}
  static constexpr uint64_t make(Kind k, uint64_t payload) {
    return (static_cast<uint64_t>(k) << 56) | payload;
  }
  uint64_t key_ = 0;
};

// monomial with nonnegative exponents, factors sorted by Var
struct Mono {
  using Factor = std::pair<Var, int>;
  boost::container::small_vector<Factor, 4> f;
  int deg = 0;

  bool is_one() const { return f.empty(); }
  int exp(Var v) const;
  bool operator==(const Mono& o) const { return deg == o.deg && f == o.f; }
  std::string str() const;
};

// graded lex: total degree first, then larger exponent of the smaller Var wins.
// returns <0, 0, >0
int mono_cmp(const Mono& x, const Mono& y);
Mono mono_mul(const Mono& x, const Mono& y);
bool mono_divides(const Mono& d, const Mono& m);
Mono mono_div(const Mono& m, const Mono& d);  // requires mono_divides(d, m)
Mono mono_min(const Mono& x, const Mono& y);  // gcd of monomials

class Poly {
 public:
  struct Term {
    Mono m;
    mpq_class c;
  };

  Poly() = default;
  Poly(long c);  // NOLINT
  Poly(const mpq_class& c);  // NOLINT
  static Poly var(Var v, int e = 1);
  static Poly term(Mono m, mpq_class c);
  static Poly from_terms(std::vector<Term> t);  // sorts and merges
  static Poly from_sorted(std::vector<Term> t);  // already descending, no zeros

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_const() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_one() const;
  mpq_class const_value() const;  // requires is_const
  size_t size() const { return t_.size(); }
  const Term& lead() const { return t_.front(); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly mul_mono(const Mono& m) const;
  std::optional<Poly> div_exact(const Poly& d) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  bool has_var(Var v) const;
  std::vector<Var> vars() const;
  int degree_in(Var v) const;
  int total_degree() const;
  Mono mono_content() const;  // gcd of all monomials
  // coefficients in powers of v: result[k] multiplies v^k
  std::vector<Poly> coeffs_in(Var v) const;
  static Poly from_coeffs(Var v, const std::vector<Poly>& c);

  std::string str() const;
  size_t hash() const;

 private:
  std::vector<Term> t_;  // strictly descending under mono_cmp, no zero coefficients
};

// gcd over Q, normalized to a primitive integer polynomial with positive leading coefficient
Poly gcd(const Poly& x, const Poly& y);
// p = unit * primitive part; returns the primitive part, writes unit
Poly primitive_part(const Poly& p, mpq_class* unit = nullptr);

// element of the fraction field; canonical form is unique, equality is syntactic
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT
  Scalar(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT
  Scalar(Var v) : num_(Poly::var(v)), den_(1) {}  // NOLINT
  static Scalar frac(const Poly& num, const Poly& den);
  static Scalar parse(std::string_view text);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_rational() const { return num_.is_const() && den_.is_const(); }
  mpq_class rational() const;  // requires is_rational

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inv() const;
  Scalar pow(int e) const;

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  bool has_var(Var v) const { return num_.has_var(v) || den_.has_var(v); }
  std::vector<Var> vars() const;
  std::string str() const;
  size_t hash() const { return num_.hash() * 1000003u ^ den_.hash(); }

 private:
  Poly num_, den_;
  static Scalar raw(Poly n, Poly d) {
    Scalar s;
    s.num_ = std::move(n);
    s.den_ = std::move(d);
    return s;
  }
};

inline Scalar operator+(long x, const Scalar& y) { return Scalar(x) + y; }
inline Scalar operator-(long x, const Scalar& y) { return Scalar(x) - y; }
inline Scalar operator*(long x, const Scalar& y) { return Scalar(x) * y; }
inline Scalar operator/(long x, const Scalar& y) { return Scalar(x) / y; }

using ParamAssignment = std::map<Var, Scalar>;

// substitute assigned variables; DenominatorVanishes when the result has a pole,
// InvalidParams when some q_ij is assigned zero
Scalar specialize(const Scalar& x, const ParamAssignment& asg);
void validate_assignment(const ParamAssignment& asg);
ParamAssignment parse_assignment(std::string_view text);  // "q12=2,a=3/5"

// polynomial in `var` truncated above `order` (order <= 2)
class TruncSeries {
 public:
  static constexpr int kMaxOrder = 2;
  TruncSeries(Var v, int order);
  TruncSeries(Var v, int order, std::vector<Scalar> coeffs);
  // expansion of a scalar around var = 0; NotExpandable on a pole there
  static TruncSeries expand(const Scalar& x, Var v, int order);

  Var var() const { return var_; }
  int order() const { return order_; }
  const Scalar& coeff(int k) const { return c_.at(k); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries operator-() const;
  bool operator==(const TruncSeries& o) const;

 private:
  void check(const TruncSeries& o) const;
  Var var_;
  int order_;
  std::vector<Scalar> c_;
};

// coefficient of v^k in x viewed as a polynomial in v (x must have v-free denominator)
Scalar coeff_of(const Scalar& x, Var v, int k);

}  // namespace mqg
