#include <gtest/gtest.h>

#include <random>

#include "mqg/error.hpp"
#include "mqg/linalg.hpp"

using namespace mqg;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

using Dense = std::vector<std::vector<Scalar>>;

// textbook Gaussian elimination over the fraction field
size_t naive_rank(Dense m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Scalar rand_entry(std::mt19937& rng) {
  const char* pool[] = {"q12", "a", "1", "-2", "1/q12", "a+1", "3/2", "a*q12-1", "q12^2", "1/(a+q12)"};
  return S(pool[rng() % 10]);
}

// random matrix of a chosen rank: product of random r-wide factors plus noise-free zeros
Dense random_matrix(std::mt19937& rng, size_t rows, size_t cols, size_t r) {
  Dense u(rows, std::vector<Scalar>(r)), v(r, std::vector<Scalar>(cols)), m(rows, std::vector<Scalar>(cols));
  for (auto& row : u)
    for (auto& x : row)
      if (rng() % 2) x = rand_entry(rng);
  for (auto& row : v)
    for (auto& x : row)
      if (rng() % 2) x = rand_entry(rng);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < r; ++k)
      if (!u[i][k].is_zero())
        for (size_t j = 0; j < cols; ++j) m[i][j] += u[i][k] * v[k][j];
  return m;
}

}  // namespace

TEST(Linalg, SingularExample) {
  auto m = ExactMatrix::from_dense({{S("q12"), S("1")}, {S("q12^2"), S("q12")}});
  EXPECT_EQ(rank(m), 1u);
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(is_zero_vec(m.apply(k[0])));
}

TEST(Linalg, RankDropsOnSpecialization) {
  auto m = ExactMatrix::from_dense({{S("q12"), S("1")}, {S("1"), S("q12")}});
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(rank(m, ParamAssignment{{Var::q(1, 2), Scalar(1)}}), 1u);
  EXPECT_EQ(rank(m, ParamAssignment{{Var::q(1, 2), Scalar(-1)}}), 1u);
  EXPECT_EQ(rank(m, ParamAssignment{{Var::q(1, 2), Scalar(2)}}), 2u);
}

TEST(Linalg, PivotPole) {
  auto m = ExactMatrix::from_dense({{S("1/(q12-1)"), S("1")}});
  try {
    rank(m, ParamAssignment{{Var::q(1, 2), Scalar(1)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PivotPole);
  }
}

TEST(Linalg, SolveAndInconsistent) {
  auto m = ExactMatrix::from_dense({{S("a"), S("1")}, {S("2*a"), S("2")}});
  auto x = solve(m, {S("q12"), S("2*q12")});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), (Vec{S("q12"), S("2*q12")}));
  EXPECT_FALSE(solve(m, {S("1"), S("1")}).has_value());
  EXPECT_TRUE(solve(m, {Scalar(), Scalar()}).has_value());
}

TEST(Linalg, QuotientDim) {
  Vec e1 = {S("1"), S("0"), S("0")}, e2 = {S("0"), S("a"), S("0")}, e3 = {S("0"), S("0"), S("1")};
  EXPECT_EQ(quotient_dim({e1, e2, e3}, {e1}), 2u);
  EXPECT_EQ(quotient_dim({e1, e2}, {Vec{S("q12"), S("a*q12"), S("0")}}), 1u);
  try {
    quotient_dim({e1, e2}, {e3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASubspace);
  }
}

TEST(Linalg, EmptyAndZero) {
  ExactMatrix z(3, 4);
  EXPECT_EQ(rank(z), 0u);
  EXPECT_EQ(kernel_basis(z).size(), 4u);
  EXPECT_EQ(rank(ExactMatrix(0, 0)), 0u);
}

TEST(Linalg, OmegaEntries) {
  // rows proportional over Q(omega)
  auto m = ExactMatrix::from_dense({{S("omega"), S("1")}, {S("-omega-1"), S("omega")}});
  EXPECT_EQ(rank(m), 1u);
}

TEST(LinalgProperties, AgreesWithNaiveElimination) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 40; ++t) {
    size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6, r = rng() % 4;
    Dense d = random_matrix(rng, rows, cols, r);
    auto m = ExactMatrix::from_dense(d);
    size_t want = naive_rank(d);
    EXPECT_EQ(rank(m), want);
    EXPECT_EQ(rank_bareiss(m), want);
    auto k = kernel_basis(m);
    EXPECT_EQ(k.size(), cols - want);
    for (auto& v : k) EXPECT_TRUE(is_zero_vec(m.apply(v)));
    EXPECT_EQ(span_rank(k), k.size());
  }
}

TEST(LinalgProperties, RankMatchesGenericSpecialization) {
  std::mt19937 rng(99);
  ParamAssignment pt = {{Var::a(), S("7/11")}, {Var::q(1, 2), S("-13/5")}};
  for (int t = 0; t < 20; ++t) {
    Dense d = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, rng() % 4);
    auto m = ExactMatrix::from_dense(d);
    EXPECT_EQ(rank(m), rank(m, pt));
  }
}

TEST(LinalgProperties, SolveRoundTrip) {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    Dense d = random_matrix(rng, rows, cols, 1 + rng() % 3);
    auto m = ExactMatrix::from_dense(d);
    Vec x0(cols);
    for (auto& s : x0) s = rand_entry(rng);
    Vec b = m.apply(x0);
    auto x = solve(m, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m.apply(*x), b);
  }
}
