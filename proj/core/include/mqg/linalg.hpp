#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mqg/scalar.hpp"
#include "mqg/tensor.hpp"

namespace mqg {

using Vec = std::vector<Scalar>;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows) {}
  static ExactMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);
  static ExactMatrix from_columns(const std::vector<Vec>& cols, size_t nrows);

  size_t rows() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  Scalar get(size_t i, size_t j) const;
  void set(size_t i, size_t j, const Scalar& v);
  void add(size_t i, size_t j, const Scalar& v);
  const std::map<size_t, Scalar>& row(size_t i) const { return rows_.at(i); }
  size_t append_row(std::map<size_t, Scalar> r);  // drops zeros
  void resize_cols(size_t c) { cols_ = c; }
  size_t nnz() const;

  ExactMatrix specialized(const ParamAssignment& asg) const;  // PivotPole on a pole
  ExactMatrix transpose() const;
  Vec apply(const Vec& v) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix scaled(const Scalar& s) const;
  bool is_zero() const;

 private:
  size_t cols_ = 0;
  std::vector<std::map<size_t, Scalar>> rows_;
};

// rank over the fraction field; with asg, rank of the specialized matrix
size_t rank(const ExactMatrix& m, const std::optional<ParamAssignment>& asg = std::nullopt);
// basis of the right kernel; vector for free column f has 1 at f and 0 at the other free columns
std::vector<Vec> kernel_basis(const ExactMatrix& m);
// one solution of m x = b, or nullopt when inconsistent
std::optional<Vec> solve(const ExactMatrix& m, const Vec& b);
// dim span(z) - dim span(b); NotASubspace when span(b) is not inside span(z)
size_t quotient_dim(const std::vector<Vec>& z, const std::vector<Vec>& b);
// rank of a family of vectors of equal length
size_t span_rank(const std::vector<Vec>& vs);

// fraction-free elimination record, exposed for tests and benchmarks
struct EchelonInfo {
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
  bool used_fallback = false;
};
EchelonInfo echelon_info(const ExactMatrix& m);

// plain Bareiss over all rows, no specialization guidance (reference path)
size_t rank_bareiss(const ExactMatrix& m);

// reduced row echelon form, pivots chosen left to right, pivot entries 1;
// zero rows dropped, rows ordered by pivot column
std::vector<std::map<size_t, Scalar>> rref(const ExactMatrix& m);

bool is_zero_vec(const Vec& v);

ExactMatrix as_matrix(const LinOp& a);

}  // namespace mqg
