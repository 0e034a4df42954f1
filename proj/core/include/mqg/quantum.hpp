#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqg/scalar.hpp"
#include "mqg/tensor.hpp"

namespace mqg {

// parameters of the standard multiparameter gl(N) structure
struct QData {
  int n = 0;
  std::map<std::pair<int, int>, Scalar> qs;  // q^{ij} for i<j
  Scalar a;

  static QData symbolic(int n);  // q^{ij} = q_ij, a = a
  void validate() const;         // InvalidParams

  Scalar q(int i, int j) const;     // q^{ji} = 1/q^{ij}, q^{ii} = 1
  Scalar qhat(int i, int j) const;  // q^{ij} for i<j, q^{ij}/a otherwise
  Scalar r(int i, int j) const;     // a q^{ij} for i<j, 1 on the diagonal, q^{ij}/a for i>j
  QData specialized(const ParamAssignment& asg) const;
  std::string digest() const;
};

// ---- noncommutative polynomials in x^i, theta^i, T_i^j

enum class Gen : uint8_t { X = 0, Theta = 1, T = 2 };

using Letter = uint32_t;
inline Letter lx(int i) { return static_cast<Letter>(i) << 8; }
inline Letter lth(int i) { return (1u << 16) | (static_cast<Letter>(i) << 8); }
inline Letter lT(int i, int j) { return (2u << 16) | (static_cast<Letter>(i) << 8) | static_cast<Letter>(j); }
inline Gen letter_gen(Letter l) { return static_cast<Gen>(l >> 16); }
inline int letter_i(Letter l) { return static_cast<int>((l >> 8) & 0xff); }
inline int letter_j(Letter l) { return static_cast<int>(l & 0xff); }
std::string letter_name(Letter l);

using Word = std::vector<Letter>;
// degree first, then lexicographic on letters (x < theta < T; T11 < T12 < T21 < ...)
struct WordLess {
  bool operator()(const Word& x, const Word& y) const;
};

class NCPoly {
 public:
  NCPoly() = default;
  static NCPoly word(Word w, const Scalar& c = Scalar(1));
  static NCPoly parse(std::string_view text);  // "x2*x1 - q12*x1*x2", letters x1, th1, T12

  void add(const Word& w, const Scalar& c);
  const std::map<Word, Scalar, WordLess>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Word& leading() const { return t_.rbegin()->first; }

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator*(const NCPoly& o) const;
  NCPoly scaled(const Scalar& s) const;
  bool operator==(const NCPoly& o) const { return t_ == o.t_; }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }
  NCPoly specialized(const ParamAssignment& asg) const;
  std::string str() const;  // greatest word first

 private:
  std::map<Word, Scalar, WordLess> t_;
};

struct CheckReport {
  std::string check;
  bool pass = false;
  std::optional<LinOp> defect;  // present iff fail
  std::string context;
  std::vector<std::pair<std::string, std::string>> details;
};

// the block operator built by solving the plane, antiplane and Hecke constraints
LinOp standard_P(const QData& qd);

CheckReport hecke_check(const LinOp& p, const Scalar& a);
LinOp braid_defect(const LinOp& p);
// details "plane" and "antiplane" carry the two conditions separately
CheckReport ideal_stability_check(const LinOp& p, const Scalar& a);

// a basis of the span of the entries of [P^t, T(x)T], in reduced echelon form:
// each relation has leading coefficient 1 on its greatest word, no other relation
// contains that word. Ordered by leading word, greatest first.
std::vector<NCPoly> frt_relations(const LinOp& p);
// reduced echelon form of any list of relations (same normalization as above)
std::vector<NCPoly> canonical_relations(const std::vector<NCPoly>& rels);

struct RInvariants {
  bool trivial = false;      // R = 1
  bool unitary = false;      // R12 R21 = 1
  bool yang_baxter = false;  // R12 R13 R23 = R23 R13 R12
  LinOp unitarity_defect, yb_defect;
};
RInvariants rmatrix_invariants(const LinOp& r);

// operators of the two-parameter gl(2) case, basis (11,12,21,22)
LinOp gl2_P(const Scalar& q, const Scalar& qp);
LinOp gl2_R(const Scalar& q, const Scalar& qp);
LinOp gl2_N(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B);
LinOp gl2_Ntilde(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B);

struct TwistReport {
  bool abelian = false;           // N~ (T*T) N is commutative
  bool block_proportional = false;  // N N'^{-1} = 1 + lambda R-block + 1
  Scalar lambda;
  bool renormalized_equal = false;  // with primed factors scaled by lambda, N N'^{-1} = R exactly
  bool simple_products = false;     // a*b = ab, c*a = ca, c*b = cb
  Scalar ad_scale;                  // a*d = ad_scale (ad + ad_correction bc)
  Scalar ad_correction;
  bool ad_correction_matches = false;  // ad_correction = (q-q')/(q+q')
  bool pass() const {
    return abelian && block_proportional && renormalized_equal && simple_products && ad_correction_matches;
  }
};
TwistReport gl2_twist_suite(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B);

// rewrites words of x and theta to the ordered normal form
// (x's ascending, then theta's ascending) using the plane, antiplane and cross relations
NCPoly qplane_normal_form(const NCPoly& p, const QData& qd);

}  // namespace mqg
