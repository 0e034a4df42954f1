#pragma once

#include <string>
#include <vector>

#include "mqg/lie.hpp"

namespace mqg {

// g + g* with basis L_0..L_{n-1}, then G^0..G^{n-1} at n..2n-1
struct DoubleAlgebra {
  int n = 0;
  LieAlgebra base;
  Structure f;      // brackets of g*
  Structure table;  // 2n x 2n
  std::vector<std::string> labels;  // g labels, then label + "*"
  SVec bracket(const SVec& x, const SVec& y) const { return sv_bracket(table, x, y); }
};

// [G^i, L_j] = -f^{im}_j L_m + eps^i_{jm} G^m. Throws IncompatibleStructures when df != 0
// or when the Jacobi identity fails on the double.
DoubleAlgebra build_double(const LieAlgebra& g, const Structure& f);

// first nonzero cyclic sum, empty when Jacobi holds
std::string jacobi_defect(const Structure& s);

// v' = v - r b: ad of g is block diagonal in (v', b), i.e. (r b, b) goes to (r b', b')
CheckReport shear_block_check(const DoubleAlgebra& d, const GTensor& r);
// <(u,a),(v,b)> = a(v) + b(u) is invariant, and on (r a, a) it equals K(a, a')
CheckReport pairing_check(const DoubleAlgebra& d, const GTensor& r);

struct SplitResult {
  std::vector<SVec> S0, S1;  // n vectors each, the one indexed j has G^j coefficient 1
  bool row_orientation = true;  // (r b)^i = r^{ij} b_j; otherwise r^{ji} b_j
  int kappa1 = 1;  // S1 = {v - r b = kappa1 K b}
  std::vector<CheckReport> certificates;
};
// S_kappa = {(v, b): v - r b = kappa K b} for kappa = 0 and the second summand; SplitFails when
// no orientation makes S_0 an ideal
SplitResult split_double(const DoubleAlgebra& d, const GTensor& r);

struct IsoReport {
  CheckReport report;
  Scalar c0, c1;  // [phi x, phi y] = c phi([x, y]) for the unscaled generators
  Mat m0, m1;     // columns: images of L_j in the double, after rescaling by 1/c
};
// x -> (r a, a) into S0 and x -> (r^t a, -a) into S1, a = K^{-1} x, rescaled; NotIsomorphic on failure
IsoReport isomorphism_certificate(const DoubleAlgebra& d, const SplitResult& s, const GTensor& r);

}  // namespace mqg
