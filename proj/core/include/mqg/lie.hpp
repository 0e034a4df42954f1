#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mqg/linalg.hpp"
#include "mqg/quantum.hpp"

namespace mqg {

using SVec = std::map<int, Scalar>;  // sparse vector over a basis, 0-based
using Structure = std::vector<std::vector<SVec>>;  // s[i][j] = [L_i, L_j]
using Mat = std::vector<std::vector<Scalar>>;

struct LieAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  Structure eps;
  Mat killing;  // tr(ad L_i ad L_j)
  Mat casimir;  // K^{ij}, the invariant tensor with r + r^t = K

  // builds killing from eps; casimir is the inverse of `form` when given, else of killing
  static LieAlgebra from_structure(std::vector<std::string> labels, Structure eps,
                                   const std::optional<Mat>& form = std::nullopt);
  SVec bracket(const SVec& x, const SVec& y) const;
  bool jacobi() const;
  int index_of(const std::string& label) const;  // -1 if absent
};

SVec sv_bracket(const Structure& s, const SVec& x, const SVec& y);

// roots are integer coordinates on the simple roots; negative roots have nonpositive coordinates
using Root = std::vector<int>;

struct RootSystem {
  int rank = 0;
  std::vector<Root> positive;      // height, then lexicographic on coordinates
  std::vector<int> h;              // basis index of h_i
  std::vector<int> e_pos, e_neg;   // basis index of e_a and e_-a, parallel to positive
  Mat pairing;                     // pairing[i][a] = r_i(alpha_a) for positive alpha_a
  Mat coroot;                      // coroot[i][a] = r^i(alpha_a)
  Mat K0;                          // casimir restricted to the Cartan part

  int find(const Root& r) const;  // index in positive, or -1
  bool is_root(const Root& r) const;
  // basis index of e_r for a positive or negative root, -1 if not a root
  int basis_of(const Root& r) const;
  Root simple(int i) const;  // 1-based
  static std::string label(const Root& r);  // "a1+a2", "-a2"
  Scalar r_lower(int i, const Root& r) const;  // r_i(alpha), linear in alpha
  Scalar r_upper(int i, const Root& r) const;  // r^i(alpha)
};

struct SlData {
  LieAlgebra g;
  RootSystem roots;
  int n = 0;
};
// sl(n) from matrix units: h_i = E_ii - E_{i+1,i+1}, e_a = E_ij (i<j), e_-a = E_ji
SlData build_sl(int n);
// checks [h_i, e_a] = r_i(a) e_a and [e_a, e_-a] = r^i(a) h_i against the structure
bool weyl_relations_hold(const SlData& s);

// ---- tensors and cochains

// a tensor in g^{(x)k}, components keyed by index tuples
struct GTensor {
  int rank = 0;
  std::map<std::vector<int>, Scalar> c;
  void add(const std::vector<int>& idx, const Scalar& v);
  bool is_zero() const { return c.empty(); }
  GTensor operator+(const GTensor& o) const;
  GTensor operator-(const GTensor& o) const;
  GTensor scaled(const Scalar& s) const;
  GTensor transposed() const;  // rank 2 only
  GTensor specialized(const ParamAssignment& asg) const;
  bool operator==(const GTensor& o) const { return rank == o.rank && c == o.c; }
};

// sorted k-subsets of {0..n-1} in lex order
struct WedgeBasis {
  int n = 0, k = 0;
  std::vector<std::vector<int>> sets;
  std::map<std::vector<int>, size_t> index;
  WedgeBasis(int n, int k);
  size_t size() const { return sets.size(); }
};
// sorts idx in place; returns the permutation sign, 0 on a repeated index
int sort_sign(std::vector<int>& idx);

// a cochain in C_p^q: coordinates sigma(L_I)^J for sorted I (p-set) and J (q-set)
struct Cochain {
  int p = 0, q = 0;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar> c;
  Vec coords(int n) const;  // index = index(I) * |q-sets| + index(J)
  static Cochain from_coords(int n, int p, int q, const Vec& v);
  // full antisymmetric tensor components, inputs first
  Scalar at(std::vector<int> in, std::vector<int> out) const;
};
Cochain structure_cochain(const Structure& s);  // eps in C_2^1
GTensor antisym_part(const GTensor& t);           // (t - t^t)/2 for rank 2
Cochain as_cochain_02(const GTensor& r);          // antisymmetric rank-2 tensor as C_0^2

enum class Module { Adjoint, Trivial };
struct DiffOptions {
  size_t max_entries = 4000000;  // rows * cols guard
};
// d: C_p^q -> C_{p+1}^q for the Lie algebra with structure s acting on wedge^q
ExactMatrix ce_differential(const Structure& s, int p, int q, Module m = Module::Adjoint,
                            const DiffOptions& opt = {});

// ---- coboundary structures

// r = sum r0^{ij} h_i (x) h_j + sum_{a>0} e_a (x) e_-a with r0 = r0_hat + K0/2
GTensor standard_r(const SlData& s, const Mat& r0_hat);
GTensor casimir_tensor(const LieAlgebra& g);

struct DualStructure {
  Structure f;  // brackets of g*: f[i][j] = {G^i, G^j} = sum_k f_k^{ij} G^k
  Cochain cobracket;  // f as C_1^2: L_k -> [L_k, r]
  std::map<std::pair<int, int>, Scalar> weights;  // (i, positive root index a) -> w^i(x^a); negatives at -a-1
  bool cartan_primitive = false;  // Delta(h_i) = 0
  bool dual_relations = false;    // {x^a, y^-b} = 0 and {x^a, x^b} nonzero iff a+b is a root
};
DualStructure cobracket(const SlData& s, const GTensor& r);
// just the brackets f^{ij}_k = [L_k, r]^{ij}, for any algebra
Structure dual_bracket(const LieAlgebra& g, const GTensor& r);
// weight of a signed simple-or-not root per the closed formula, for comparison
Scalar weight_formula(const SlData& s, const Mat& r0_hat, int j, const Root& beta);

// sign applied to the g* differential on C_p^q so that d and dual anticommute; value is
// (-1)^p when true
bool dual_sign_by_degree();
// dual differential: C_p^q -> C_p^{q+1}, built from f, acting on wedge^p g* (trivial module when p = 0)
ExactMatrix dual_differential(const Structure& f, int n, int p, int q, const DiffOptions& opt = {});

CheckReport compatibility_check(const Structure& eps, const Structure& f, unsigned seed = 1);

// [r12,r13] + [r12,r23] + [r13,r23]
GTensor schouten(const Structure& s, const GTensor& r);
// d/dt of schouten(r + t x) at t = 0
GTensor schouten_linear(const Structure& s, const GTensor& r, const GTensor& x);

// the two identities r U + U r + f(u) = 0 and r A + A r + r eps(a) r = 0 on basis elements
struct Identity322 {
  bool first = false, second = false;
  std::string detail;
};
Identity322 check_identities_322(const LieAlgebra& g, const GTensor& r, const Structure& f);

// ---- H^2 of g*

struct SigmaPair {
  Root alpha, beta;  // simple roots with opposite signs
};
struct H2Report {
  std::vector<SigmaPair> sigma;
  size_t dim_z2 = 0, dim_b2 = 0, dim_h2 = 0, dim_essential = 0;
  std::vector<GTensor> basis;  // e_a ^ e_b for the sigma pairs
  std::vector<Scalar> surface_equations;  // canonical, one per component and candidate pair
  bool r0_form_agrees = false;  // sigma from weights equals sigma from the r0 form of the condition
};
Mat symbolic_r0_hat(int rank);  // entries t_ij above the diagonal
H2Report h2_dual(const SlData& s, const Mat& r0_hat, const std::optional<ParamAssignment>& asg = std::nullopt);
// w(alpha) + w(beta), one entry per Cartan index
std::vector<Scalar> weight_sum(const SlData& s, const Mat& r0_hat, const Root& a, const Root& b);

// ---- second order

struct ObstructionCertificate {
  std::vector<int> monomial;  // sorted basis indices of the unmatched wedge monomial
  std::string label;
  Scalar value;  // coefficient of -YB(r1) on that monomial
};
struct SecondOrderResult {
  bool r1_closed = false;  // first-order condition holds
  std::optional<GTensor> r2;
  std::optional<ObstructionCertificate> obstruction;
  GTensor yb;  // schouten(r1)
  // components (i<j) of r2 that are not fixed by the equation (touched by its kernel)
  std::set<std::pair<int, int>> free_components;
};
SecondOrderResult second_order_step(const SlData& s, const GTensor& r, const GTensor& r1);
// e_a ^ e_b = e_a (x) e_b - e_b (x) e_a
GTensor wedge2(int n, int a, int b, const Scalar& c = Scalar(1));

struct BDInput {
  std::vector<int> gamma1;   // simple roots, 1-based
  std::map<int, int> tau;    // simple root -> simple root
};
CheckReport bd_admissibility_check(const SlData& s, const Mat& r0_hat, const BDInput& in);

}  // namespace mqg
