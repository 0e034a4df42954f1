#include <gtest/gtest.h>

#include <random>

#include "mqg/error.hpp"
#include "mqg/tensor.hpp"

using namespace mqg;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

// the two-parameter gl(2) operator written out by hand, q' stored as "qp"
LinOp gl2_P() {
  LinOp p(2, 2);
  Scalar q = S("q"), qp = S("qp");
  p.set({1, 1}, {1, 1}, 1);
  p.set({2, 2}, {2, 2}, 1);
  p.set({1, 2}, {1, 2}, Scalar(1) - qp / q);
  p.set({1, 2}, {2, 1}, qp);
  p.set({2, 1}, {1, 2}, q.inv());
  return p;
}

using Dense = std::vector<std::vector<Scalar>>;

Dense dense(const LinOp& a) {
  Dense d(a.dim(), std::vector<Scalar>(a.dim()));
  for (auto& [r, c, v] : a.entries()) d[r][c] = v;
  return d;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  size_t n = a.size();
  Dense c(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      if (!a[i][k].is_zero())
        for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

LinOp random_op(std::mt19937& rng, int n, int legs) {
  LinOp a(n, legs);
  const char* pool[] = {"q12", "a", "1", "-2", "1/q12", "a+1", "3/2"};
  for (uint32_t r = 0; r < a.dim(); ++r)
    for (uint32_t c = 0; c < a.dim(); ++c)
      if (rng() % 3 == 0) a.set(r, c, S(pool[rng() % 7]));
  return a;
}

}  // namespace

TEST(Tensors, IdentityAndFlip) {
  LinOp p = gl2_P();
  EXPECT_EQ(compose(LinOp::identity(2, 2), p), p);
  EXPECT_EQ(compose(p, LinOp::identity(2, 2)), p);
  LinOp s = LinOp::flip(3);
  EXPECT_EQ(compose(s, s), LinOp::identity(3, 2));
}

TEST(Tensors, HeckeByDenseMultiply) {
  LinOp p = gl2_P();
  Scalar a = S("qp/q");
  Dense sq = dense_mul(dense(p), dense(p));
  LinOp rhs = p.scaled(Scalar(1) - a) + LinOp::identity(2, 2).scaled(a);
  EXPECT_EQ(LinOp::from_dense(2, 2, sq), rhs);
  EXPECT_EQ(compose(p, p), rhs);
}

TEST(Tensors, LiftShapes) {
  LinOp s = LinOp::flip(2);
  LinOp s12 = lift(s, 1, 3), s23 = lift(s, 2, 3);
  EXPECT_EQ(s12.nnz(), 8u);
  EXPECT_EQ(s12.at({2, 1, 1}, {1, 2, 1}), Scalar(1));
  EXPECT_EQ(s23.at({1, 1, 2}, {1, 2, 1}), Scalar(1));
  // s12 s23 s12 = s23 s12 s23
  EXPECT_EQ(compose(compose(s12, s23), s12), compose(compose(s23, s12), s23));
  EXPECT_THROW(lift(s, 3, 3), Error);
}

TEST(Tensors, FlipActionOnBasisVector) {
  // sigma_12 sends e1(x)e2(x)e3 to e2(x)e1(x)e3
  LinOp s12 = lift(LinOp::flip(3), 1, 3);
  uint32_t src = s12.encode({1, 2, 3});
  std::vector<std::pair<uint32_t, Scalar>> image;
  for (auto& [r, c, v] : s12.entries())
    if (c == src) image.emplace_back(r, v);
  ASSERT_EQ(image.size(), 1u);
  EXPECT_EQ(s12.decode(image[0].first), (MultiIndex{2, 1, 3}));
}

TEST(Tensors, FlipLegsInvolution) {
  LinOp p = gl2_P();
  EXPECT_EQ(flip_legs(flip_legs(p, {2, 1}), {2, 1}), p);
  // simultaneous flip equals conjugation by sigma
  LinOp s = LinOp::flip(2);
  EXPECT_EQ(flip_legs(p, {2, 1}), compose(compose(s, p), s));
  EXPECT_EQ(flip_col_legs(p, {2, 1}), compose(p, s));
  EXPECT_THROW(flip_legs(p, {1, 1}), Error);
}

TEST(Tensors, QuantumPlaneRows) {
  LinOp p = gl2_P();
  CoTensor xx = CoTensor::words(2, 2, 'x');
  CoTensor rel = act_row(xx, p - LinOp::identity(2, 2));
  Scalar x12 = S("x1x2"), x21 = S("x2x1");
  Scalar want = x12 - S("q") * x21;
  EXPECT_TRUE(rel.at({1, 1}).is_zero());
  EXPECT_TRUE(rel.at({2, 2}).is_zero());
  EXPECT_EQ(rel.at({1, 2}), want * S("-qp/q"));
  EXPECT_EQ(rel.at({2, 1}), want / S("q"));
}

TEST(Tensors, ExteriorPlaneRows) {
  LinOp p = gl2_P();
  CoTensor th(2, 2);
  th.set({1, 2}, S("-qp*t"));
  th.set({2, 1}, S("t"));
  CoTensor rel = act_row(th, p + LinOp::identity(2, 2).scaled(S("qp/q")));
  EXPECT_TRUE(rel.is_zero());
}

TEST(Tensors, ShapeErrors) {
  EXPECT_THROW(compose(LinOp(2, 2), LinOp(3, 2)), Error);
  EXPECT_THROW(LinOp(2, 2).set(4, 0, Scalar(1)), Error);
  EXPECT_THROW(LinOp(0, 2), Error);
  try {
    LinOp(50, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionOverflow);
  }
}

TEST(TensorProperties, ComposeAssociativeAndDense) {
  std::mt19937 rng(7);
  for (int t = 0; t < 8; ++t) {
    LinOp a = random_op(rng, 2, 2), b = random_op(rng, 2, 2), c = random_op(rng, 2, 2);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    EXPECT_EQ(LinOp::from_dense(2, 2, dense_mul(dense(a), dense(b))), compose(a, b));
  }
}

TEST(TensorProperties, DisjointLiftsCommute) {
  std::mt19937 rng(11);
  for (int t = 0; t < 4; ++t) {
    LinOp a = random_op(rng, 2, 2), b = random_op(rng, 2, 2);
    LinOp a12 = lift(a, 1, 4), b34 = lift(b, 3, 4);
    EXPECT_EQ(compose(a12, b34), compose(b34, a12));
  }
}

TEST(TensorProperties, FlipLegsDistributes) {
  std::mt19937 rng(13);
  for (int t = 0; t < 6; ++t) {
    LinOp a = random_op(rng, 2, 3), b = random_op(rng, 2, 3);
    std::vector<int> perm = {2, 3, 1};
    EXPECT_EQ(flip_legs(compose(a, b), perm), compose(flip_legs(a, perm), flip_legs(b, perm)));
  }
}
