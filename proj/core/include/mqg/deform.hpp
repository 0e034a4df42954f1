#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqg/linalg.hpp"
#include "mqg/quantum.hpp"

namespace mqg {

struct FirstOrderDef {
  LinOp base;                      // P
  LinOp direction;                 // P1
  std::vector<Scalar> conditions;  // each must vanish on the parameter surface
  std::string label;
};

// P1 = PZ - ZP with Z = A(x)1 + 1(x)A; A is N x N, A[i][k] sits at row i, column k
LinOp trivial_def_basis_change(const std::vector<std::vector<Scalar>>& A, const QData& qd);
// sum over i<j of dq^{ij} dP/dq^{ij}
LinOp trivial_def_q_variation(const std::map<std::pair<int, int>, Scalar>& dq, const QData& qd);
// dP/da at fixed q
LinOp a_variation(const QData& qd);

// the linearized conditions as matrices acting on the N^4 entries of P1 (column index = row*N^2 + col)
ExactMatrix linear_hecke_system(const LinOp& p, const Scalar& a);
ExactMatrix linear_braid_system(const LinOp& p);
LinOp unflatten(const Vec& v, int n);
Vec flatten(const LinOp& x);
// first-order coefficient of the braid defect of P + eps X, by the product rule
LinOp linear_braid(const LinOp& p, const LinOp& x);

struct FirstOrderSpace {
  size_t dim_total = 0;      // solutions of the joint linearized Hecke + braid system
  size_t dim_trivial = 0;    // span of basis changes and q variations
  size_t dim_essential = 0;  // quotient
  std::vector<LinOp> basis;  // representatives of the essential classes
  std::vector<LinOp> solutions;
};
FirstOrderSpace first_order_space(const QData& qd, const std::optional<ParamAssignment>& asg = std::nullopt);
// all trivial generators: N^2 basis changes then one q variation per i<j
std::vector<LinOp> trivial_generators(const QData& qd);

// principal series; case 1: k+1 = i <= j = l-1, case 2: i+1 = k <= l = j-1
FirstOrderDef elementary_principal(int i, int j, int which_case, const QData& qd);
enum class ExceptionalVariant { Upper, Lower };
// exceptional series, requires a^3 = 1 with a != 1 (use a = omega)
FirstOrderDef elementary_exceptional(int i, int j, int k, ExceptionalVariant v, const QData& qd);

// subtracts the trivial combination that clears every entry with at most two distinct indices
LinOp normal_form(const LinOp& p1, const QData& qd);

struct ProbeReport {
  bool pass = false;           // braid-only solutions lie in Hecke solutions + span{P, dP/da}
  bool strict = false;         // braid-only solutions lie in Hecke solutions (a and scale frozen)
  size_t dim_braid = 0, dim_hecke_braid = 0;
};
ProbeReport hecke_preservation_probe(const QData& qd, const std::optional<ParamAssignment>& asg = std::nullopt);

// solves each condition (numerator = 0) for a q or p variable appearing linearly, preferring `prefer`.
// Returns the substitution; conditions already implied are skipped. nullopt if some condition
// cannot be solved this way.
std::optional<ParamAssignment> solve_surface(const std::vector<Scalar>& conditions, const std::vector<Var>& prefer = {});
// composes a substitution into QData (q's and a)
QData on_surface(const QData& qd, const ParamAssignment& sub);

struct ClassicalRMatrix {
  int n = 0;
  LinOp r;                      // r = sum r^{ij}_{kl} M_k^i (x) M_l^j, stored at (row ij, col kl)
  std::optional<LinOp> delta_r;  // leading h-order of the perturbation, same layout
};
// a = 1 + h, q^{ij} = 1 + h p^{ij}; the p's are the variables p_ij
ClassicalRMatrix classical_limit(int n, const std::optional<LinOp>& p1 = std::nullopt);
// the substitution a = 1+h, q_ij = 1 + h p_ij
ParamAssignment classical_substitution(int n);

enum class BDSlots { Literal, Swapped };
struct BDReport {
  bool pass = false;
  std::vector<int> violated;        // m values where the invariance component is nonzero
  std::vector<Scalar> components;   // component m of the invariance condition, m = 1..N
  std::vector<Scalar> residuals;    // residual of p^{lm}+p^{km}+p^{mi}+p^{mj} - (delta_mj - delta_mi)
  bool matches_components = false;  // components == -residuals or == residuals for every m, identically
};
// r0 = sum_{i<j} (p^{ij} M_j^j (x) M_i^i - (1+p^{ij}) M_i^i (x) M_j^j), alpha = M_k^i, tau alpha = M_j^l
BDReport bd_invariance_check(int n, const std::map<std::pair<int, int>, Scalar>& p, std::pair<int, int> alpha_ik,
                             std::pair<int, int> tau_lj, BDSlots slots = BDSlots::Swapped);
// first-order parts in h of conditions of the form lhs - a^x under a = 1+h, q = 1+hp
std::vector<Scalar> first_order_conditions(const std::vector<Scalar>& conditions, int n);

// (prod_i q^{ij})^2 a^{2j} = a^{N+1} for every j
CheckReport sl_restriction_check(const QData& qd);

}  // namespace mqg
