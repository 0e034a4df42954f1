#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "mqg/error.hpp"
#include "mqg/linalg.hpp"
#include "mqg/quantum.hpp"

using namespace mqg;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

size_t kernel_dim(const LinOp& a) { return a.dim() - rank(as_matrix(a)); }

QData random_qdata(std::mt19937& rng, int n) {
  QData d;
  d.n = n;
  auto rq = [&]() {
    long num = 1 + static_cast<long>(rng() % 9), den = 1 + static_cast<long>(rng() % 5);
    mpq_class v(num, den);
    v.canonicalize();
    return Scalar(v);
  };
  d.a = rq() + Scalar(1);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) d.qs[{i, j}] = rq();
  return d;
}

// inverse of a rational operator, column by column
LinOp inverse(const LinOp& m) {
  ExactMatrix a = as_matrix(m);
  LinOp out(m.dim_v(), m.legs());
  for (uint32_t c = 0; c < m.dim(); ++c) {
    Vec e(m.dim());
    e[c] = Scalar(1);
    auto x = solve(a, e);
    if (!x) throw std::runtime_error("singular");
    for (uint32_t r = 0; r < m.dim(); ++r) out.set(r, c, (*x)[r]);
  }
  return out;
}

}  // namespace

TEST(Quantum, StandardPOneDim) {
  LinOp p = standard_P(QData::symbolic(1));
  EXPECT_EQ(p, LinOp::identity(1, 2));
}

TEST(Quantum, StandardPMatchesTwoParameterMatrix) {
  // q^{12} = q and a = q'/q reproduce the gl(2) matrix entrywise
  QData d;
  d.n = 2;
  d.qs[{1, 2}] = S("q");
  d.a = S("qp/q");
  EXPECT_EQ(standard_P(d), gl2_P(S("q"), S("qp")));
  // the other matching does not
  d.qs[{1, 2}] = S("qp");
  EXPECT_NE(standard_P(d), gl2_P(S("q"), S("qp")));
}

TEST(Quantum, StandardPBlocks) {
  LinOp p = standard_P(QData::symbolic(3));
  EXPECT_EQ(p.at({1, 2}, {1, 2}), S("1-a"));
  EXPECT_EQ(p.at({1, 2}, {2, 1}), S("a*q12"));
  EXPECT_EQ(p.at({2, 1}, {1, 2}), S("1/q12"));
  EXPECT_TRUE(p.at({2, 1}, {2, 1}).is_zero());
  EXPECT_EQ(p.nnz(), 3u + 3u * 3u);
}

TEST(Quantum, InvalidParams) {
  QData d = QData::symbolic(2);
  d.a = Scalar(-1);
  EXPECT_THROW(standard_P(d), Error);
  d.a = Scalar(0);
  EXPECT_THROW(standard_P(d), Error);
  d = QData::symbolic(2);
  d.qs.clear();
  EXPECT_THROW(standard_P(d), Error);
}

TEST(Quantum, Eigenspaces) {
  for (int n = 1; n <= 4; ++n) {
    QData d = QData::symbolic(n);
    LinOp p = standard_P(d);
    LinOp one = LinOp::identity(n, 2);
    EXPECT_EQ(kernel_dim(p - one), static_cast<size_t>(n * (n + 1) / 2)) << n;
    EXPECT_EQ(kernel_dim(p + one.scaled(d.a)), static_cast<size_t>(n * (n - 1) / 2)) << n;
  }
}

TEST(Quantum, Hecke) {
  EXPECT_TRUE(hecke_check(LinOp::identity(3, 2), S("a")).pass);
  EXPECT_TRUE(hecke_check(LinOp::flip(3), Scalar(1)).pass);
  LinOp p = gl2_P(S("q"), S("qp"));
  EXPECT_TRUE(hecke_check(p, S("qp/q")).pass);
  auto bad = hecke_check(p, S("q/qp"));
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.defect.has_value());
  EXPECT_FALSE(bad.defect->is_zero());
}

TEST(Quantum, Braid) {
  EXPECT_TRUE(braid_defect(LinOp::flip(3)).is_zero());
  LinOp p = standard_P(QData::symbolic(3));
  EXPECT_TRUE(braid_defect(p).is_zero());
  EXPECT_TRUE(hecke_check(p, S("a")).pass);
  LinOp bent = p;
  bent.set({1, 2}, {2, 1}, p.at({1, 2}, {2, 1}) + Scalar(1));
  EXPECT_FALSE(braid_defect(bent).is_zero());
}

TEST(Quantum, IdealStability) {
  auto rep = ideal_stability_check(standard_P(QData::symbolic(2)), S("a"));
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.details.size(), 2u);
  EXPECT_EQ(rep.details[0].second, "pass");
  EXPECT_EQ(rep.details[1].second, "pass");
  EXPECT_TRUE(ideal_stability_check(LinOp::flip(2), Scalar(1)).pass);
}

TEST(QuantumProperties, IdealConditionsEquivalentToBraid) {
  std::mt19937 rng(31);
  int positives = 0, negatives = 0;
  for (int t = 0; t < 24; ++t) {
    LinOp p;
    Scalar a;
    if (t % 3 == 0) {
      QData d = random_qdata(rng, 2);
      p = standard_P(d);
      a = d.a;
    } else {
      // conjugate a random split of eigenvalues {1, -a}
      a = Scalar(mpq_class(2 + static_cast<long>(rng() % 5), 3));
      LinOp m(2, 2), diag(2, 2);
      for (uint32_t i = 0; i < 4; ++i) {
        m.set(i, i, Scalar(1 + static_cast<long>(rng() % 3)));
        for (uint32_t j = i + 1; j < 4; ++j)
          if (rng() % 2) m.set(i, j, Scalar(static_cast<long>(rng() % 5) - 2));
        diag.set(i, i, i < 1 + rng() % 3 ? Scalar(1) : -a);
      }
      if (rng() % 2) m = compose(m, LinOp::flip(2));
      p = compose(compose(m, diag), inverse(m));
    }
    ASSERT_TRUE(hecke_check(p, a).pass);
    bool braid = braid_defect(p).is_zero();
    EXPECT_EQ(ideal_stability_check(p, a).pass, braid);
    (braid ? positives : negatives)++;
  }
  EXPECT_GT(positives, 0);
  EXPECT_GT(negatives, 0);
}

TEST(Quantum, FrtIdentityAndFlip) {
  EXPECT_TRUE(frt_relations(LinOp::identity(2, 2)).empty());
  auto rels = frt_relations(LinOp::flip(2));
  EXPECT_EQ(rels.size(), 6u);
  for (auto& r : rels) {
    ASSERT_EQ(r.size(), 2u);
    auto it = r.terms().begin();
    const Word& lo = it->first;
    const Word& hi = std::next(it)->first;
    EXPECT_EQ(it->second, Scalar(-1));
    EXPECT_EQ(lo, (Word{hi[1], hi[0]}));
  }
  EXPECT_EQ(frt_relations(LinOp::flip(3)).size(), 36u);
}

TEST(Quantum, FrtTwoParameter) {
  // a = T11, b = T12, c = T21, d = T22
  std::vector<NCPoly> want = {
      NCPoly::parse("T11*T12 - q*T12*T11"), NCPoly::parse("T21*T22 - q*T22*T21"),
      NCPoly::parse("T21*T11 - qp*T11*T21"), NCPoly::parse("T22*T12 - qp*T12*T22"),
      NCPoly::parse("T21*T12 - q*qp*T12*T21"),
      NCPoly::parse("T11*T22 - T22*T11 - (q-qp)*T12*T21")};
  auto got = frt_relations(gl2_P(S("q"), S("qp")));
  EXPECT_EQ(got.size(), 6u);
  EXPECT_EQ(got, canonical_relations(want));
}

TEST(Quantum, RMatrix) {
  auto id = rmatrix_invariants(LinOp::identity(2, 2));
  EXPECT_TRUE(id.trivial && id.unitary && id.yang_baxter);
  LinOp r = gl2_R(S("q"), S("qp"));
  auto inv = rmatrix_invariants(r);
  EXPECT_FALSE(inv.trivial);
  EXPECT_TRUE(inv.yang_baxter);
  EXPECT_FALSE(inv.unitary);
  // relation to the P operator: transpose after exchanging the column legs
  EXPECT_EQ(flip_col_legs(r, {2, 1}).transpose(), gl2_P(S("q"), S("qp")));
  // the simultaneous flip is not proportional to P
  LinOp s = flip_legs(r, {2, 1});
  LinOp p = gl2_P(S("q"), S("qp"));
  Scalar k = p.at({1, 1}, {1, 1}) / s.at({1, 1}, {1, 1});
  EXPECT_NE(s.scaled(k), p);
}

TEST(Quantum, TwistSuite) {
  auto rep = gl2_twist_suite(S("q"), S("qp"), S("A"), S("B"));
  EXPECT_TRUE(rep.abelian);
  EXPECT_TRUE(rep.block_proportional);
  EXPECT_EQ(rep.lambda, S("q^2*qp"));
  EXPECT_TRUE(rep.renormalized_equal);
  EXPECT_TRUE(rep.simple_products);
  EXPECT_TRUE(rep.ad_correction_matches);
  EXPECT_EQ(rep.ad_correction, S("(q-qp)/(q+qp)"));
  EXPECT_EQ(rep.ad_scale, S("(q+qp)/(2*q*qp)"));
  EXPECT_TRUE(rep.pass());
  EXPECT_THROW(gl2_twist_suite(S("q"), S("qp"), S("A"), S("A")), Error);
  EXPECT_THROW(gl2_twist_suite(S("q"), S("qp"), S("A"), S("-A")), Error);
}

TEST(Quantum, TwistUntwistedPoint) {
  auto rep = gl2_twist_suite(Scalar(1), Scalar(1), S("A"), S("B"));
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.lambda, Scalar(1));
  EXPECT_EQ(gl2_R(Scalar(1), Scalar(1)), LinOp::identity(2, 2));
  // at q = q' away from 1 the block is diag(1/q, q), not a multiple of the identity
  EXPECT_NE(gl2_R(S("q"), S("q")), LinOp::identity(2, 2).scaled(S("1/q")));
}

TEST(Quantum, NormalFormExamples) {
  QData d = QData::symbolic(3);
  auto nf = [&](const char* s) { return qplane_normal_form(NCPoly::parse(s), d); };
  EXPECT_EQ(nf("x2*x1"), NCPoly::parse("1/q12*x1*x2"));
  EXPECT_EQ(nf("x3*x2*x1"), NCPoly::parse("1/(q12*q13*q23)*x1*x2*x3"));
  EXPECT_TRUE(nf("th1*th1").is_zero());
  EXPECT_EQ(nf("th2*th1"), NCPoly::parse("-1/(a*q12)*th1*th2"));
  EXPECT_EQ(nf("th1*x1"), NCPoly::parse("a*x1*th1"));
  EXPECT_EQ(nf("x1*x2 - q12*x2*x1").str(), "0");
}

TEST(Quantum, NCPolyText) {
  auto p = NCPoly::parse("T11*T12 - q*T12*T11 + (q-qp)*T21");
  EXPECT_EQ(NCPoly::parse(p.str()), p);
  EXPECT_EQ(NCPoly::parse("2*x1 - 2*x1").str(), "0");
  EXPECT_THROW(NCPoly::parse("x1*q"), Error);
}

TEST(QuantumProperties, NormalFormConfluent) {
  // independent oracle: every first rewrite position must lead to the same normal form
  std::mt19937 rng(4);
  for (int round = 0; round < 2; ++round) {
    QData d = round == 0 ? QData::symbolic(2) : random_qdata(rng, 3);
    LinOp cross = standard_P(d) + LinOp::identity(d.n, 2).scaled(d.a - Scalar(1));
    std::map<Word, NCPoly, WordLess> memo;
    std::function<NCPoly(const Word&)> nf_all = [&](const Word& w) -> NCPoly {
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      std::optional<NCPoly> result;
      for (size_t k = 0; k + 1 < w.size(); ++k) {
        Letter u = w[k], v = w[k + 1];
        std::vector<std::pair<Word, Scalar>> rep;
        int i = letter_i(u), j = letter_i(v);
        bool fires = false;
        if (letter_gen(u) == Gen::X && letter_gen(v) == Gen::X && i > j) {
          fires = true;
          rep.push_back({{v, u}, d.q(i, j)});
        } else if (letter_gen(u) == Gen::Theta && letter_gen(v) == Gen::Theta && i >= j) {
          fires = true;
          if (i > j) rep.push_back({{v, u}, -d.r(i, j)});
        } else if (letter_gen(u) == Gen::Theta && letter_gen(v) == Gen::X) {
          fires = true;
          for (int a = 1; a <= d.n; ++a)
            for (int b = 1; b <= d.n; ++b) rep.push_back({{lx(a), lth(b)}, cross.at({i, j}, {a, b})});
        }
        if (!fires) continue;
        NCPoly acc;
        for (auto& [pair, c] : rep) {
          if (c.is_zero()) continue;
          Word nw(w.begin(), w.begin() + static_cast<long>(k));
          nw.insert(nw.end(), pair.begin(), pair.end());
          nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 2, w.end());
          acc = acc + nf_all(nw).scaled(c);
        }
        if (result) {
          EXPECT_EQ(*result, acc) << "rewrite orders disagree";
        } else {
          result = acc;
        }
      }
      NCPoly out = result ? *result : NCPoly::word(w);
      memo.emplace(w, out);
      return out;
    };
    int maxlen = round == 0 ? 6 : 5;
    for (int t = 0; t < 25; ++t) {
      Word w;
      int len = 2 + static_cast<int>(rng() % (maxlen - 1));
      for (int k = 0; k < len; ++k) {
        int idx = 1 + static_cast<int>(rng() % d.n);
        w.push_back(rng() % 2 ? lx(idx) : lth(idx));
      }
      NCPoly want = nf_all(w);
      NCPoly got = qplane_normal_form(NCPoly::word(w), d);
      EXPECT_EQ(got, want);
      EXPECT_EQ(qplane_normal_form(got, d), got);
    }
  }
}
