#pragma once

#include <cstdint>
#include <functional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mqg/scalar.hpp"

namespace mqg {

using MultiIndex = std::vector<int>;  // 1-based leg indices

// sparse operator on V^{(x)k}; entry (row, col) holds X^{row}_{col}
// (upper multi-index = row, lower = column). Basis order is lexicographic:
// 11, 12, ..., 1N, 21, ..., NN.
class LinOp {
 public:
  LinOp() = default;
  LinOp(int n, int legs);
  static LinOp identity(int n, int legs);
  static LinOp flip(int n);  // sigma on V(x)V
  // from a dense row-major table over the basis order
  static LinOp from_dense(int n, int legs, const std::vector<std::vector<Scalar>>& rows);

  int dim_v() const { return n_; }
  int legs() const { return k_; }
  uint32_t dim() const { return dim_; }

  uint32_t encode(const MultiIndex& m) const;
  MultiIndex decode(uint32_t idx) const;

  Scalar get(uint32_t r, uint32_t c) const;
  Scalar at(const MultiIndex& r, const MultiIndex& c) const { return get(encode(r), encode(c)); }
  void set(uint32_t r, uint32_t c, const Scalar& v);
  void set(const MultiIndex& r, const MultiIndex& c, const Scalar& v) { set(encode(r), encode(c), v); }
  void add(uint32_t r, uint32_t c, const Scalar& v);

  size_t nnz() const { return e_.size(); }
  bool is_zero() const { return e_.empty(); }
  // (row, col, value) sorted by (row, col)
  std::vector<std::tuple<uint32_t, uint32_t, Scalar>> entries() const;

  LinOp operator+(const LinOp& o) const;
  LinOp operator-(const LinOp& o) const;
  LinOp operator-() const;
  LinOp scaled(const Scalar& s) const;
  LinOp transpose() const;
  LinOp map(const std::function<Scalar(const Scalar&)>& f) const;
  bool operator==(const LinOp& o) const;
  bool operator!=(const LinOp& o) const { return !(*this == o); }

 private:
  void check_same(const LinOp& o) const;
  uint64_t key(uint32_t r, uint32_t c) const { return static_cast<uint64_t>(r) * dim_ + c; }
  int n_ = 0, k_ = 0;
  uint32_t dim_ = 0;
  std::unordered_map<uint64_t, Scalar> e_;
};

// A.B (B applied first)
LinOp compose(const LinOp& a, const LinOp& b);
// A on legs (i, i+1) of a k-leg space, identity elsewhere
LinOp lift(const LinOp& a, int i, int k);
// leg t of the input becomes leg perm[t] (1-based), on rows and columns simultaneously
LinOp flip_legs(const LinOp& a, const std::vector<int>& perm);
// permute only the column legs: B^{r}_{c} = A^{r}_{c permuted}
LinOp flip_col_legs(const LinOp& a, const std::vector<int>& perm);

// a k-leg tensor with one multi-index, e.g. xx = (x^i x^j)
class CoTensor {
 public:
  CoTensor() = default;
  CoTensor(int n, int legs);
  int dim_v() const { return n_; }
  int legs() const { return k_; }
  uint32_t dim() const { return dim_; }
  Scalar get(uint32_t i) const;
  Scalar at(const MultiIndex& m) const;
  void set(uint32_t i, const Scalar& v);
  void set(const MultiIndex& m, const Scalar& v);
  size_t nnz() const { return e_.size(); }
  bool is_zero() const { return e_.empty(); }
  std::vector<std::pair<uint32_t, Scalar>> entries() const;
  uint32_t encode(const MultiIndex& m) const;
  MultiIndex decode(uint32_t idx) const;
  bool operator==(const CoTensor& o) const;

  // the tensor of formal words: entry (i,j,..) is the symbol "<s>i<s>j.."
  static CoTensor words(int n, int legs, char letter);

 private:
  int n_ = 0, k_ = 0;
  uint32_t dim_ = 0;
  std::unordered_map<uint32_t, Scalar> e_;
};

// contracts the cotensor index with the lower (column) multi-index of A:
// result^{r} = sum_c A^{r}_{c} x_c. This is the reading under which xx(P-1) = 0
// gives x^i x^j = q^{ij} x^j x^i.
CoTensor act_row(const CoTensor& x, const LinOp& a);

std::string index_str(const MultiIndex& m);

}  // namespace mqg
