#include <gtest/gtest.h>

#include <random>

#include "mqg/error.hpp"
#include "mqg/scalar.hpp"

using namespace mqg;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

// dense reference multiply, independent of Poly::operator*
Poly brute_mul(const Poly& x, const Poly& y) {
  std::vector<Poly::Term> t;
  for (auto& a : x.terms())
    for (auto& b : y.terms()) t.push_back({mono_mul(a.m, b.m), a.c * b.c});
  return Poly::from_terms(t);
}

Scalar random_scalar(std::mt19937& rng) {
  std::vector<Var> vs = {Var::a(), Var::q(1, 2), Var::q(2, 3)};
  auto rpoly = [&]() {
    Poly p;
    int nt = 1 + rng() % 3;
    for (int k = 0; k < nt; ++k) {
      Poly m(static_cast<long>(rng() % 7) - 3);
      for (Var v : vs) m = m * Poly::var(v, rng() % 3);
      p = p + m;
    }
    return p;
  };
  Poly d = rpoly();
  while (d.is_zero()) d = rpoly();
  return Scalar::frac(rpoly(), d);
}

}  // namespace

TEST(Scalars, LaurentInverse) {
  Scalar q(Var::q(1, 2));
  EXPECT_TRUE((q * q.inv()).is_one());
  EXPECT_TRUE((S("a - 1") + S("1 - a")).is_zero());
}

TEST(Scalars, CancelsCommonFactor) {
  Scalar x = S("(a^2 - 1)/(a - 1)");
  EXPECT_EQ(x, S("a + 1"));
  // multiply back by brute force
  Poly back = brute_mul(S("a + 1").num(), S("a - 1").num());
  EXPECT_EQ(back, S("a^2 - 1").num());
}

TEST(Scalars, CanonicalText) {
  Scalar q(Var::q(1, 2));
  Scalar x = (1 - q * q) / q;
  EXPECT_EQ(x.str(), "(-q12^2 + 1)/(q12)");
  EXPECT_EQ(Scalar::parse(x.str()), x);
  EXPECT_EQ(S("q21"), q.inv());
  EXPECT_EQ(S("x/2").str(), "1/2*x");
  EXPECT_EQ(S("1/(2*x)").str(), "(1/2)/(x)");
  EXPECT_EQ(S("(2*a+2)/(4*a)").str(), "(1/2*a + 1/2)/(a)");
}

TEST(Scalars, VarOrder) {
  EXPECT_LT(Var::a(), Var::h());
  EXPECT_LT(Var::h(), Var::eps());
  EXPECT_LT(Var::eps(), Var::q(1, 2));
  EXPECT_LT(Var::q(1, 2), Var::q(1, 3));
  EXPECT_LT(Var::q(1, 3), Var::q(2, 3));
  EXPECT_LT(Var::q(3, 4), Var::p(1, 2));
  EXPECT_LT(Var::p(3, 4), Var::named("A"));
  EXPECT_EQ(Var::parse("q_12"), Var::q(1, 2));
  EXPECT_EQ(Var::named("qp").name(), "qp");
}

TEST(Scalars, DivisionByZero) {
  EXPECT_THROW(Scalar(0).inv(), Error);
  EXPECT_THROW(S("a") / S("a - a"), Error);
}

TEST(Scalars, Specialize) {
  ParamAssignment asg{{Var::q(1, 2), Scalar(2)}, {Var::a(), Scalar(3)}};
  EXPECT_EQ(specialize(S("q12*a"), asg), Scalar(6));
  try {
    specialize(S("1/(a-1)"), {{Var::a(), Scalar(1)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DenominatorVanishes);
  }
  EXPECT_EQ(specialize(S("q21"), {{Var::q(1, 2), S("2/3")}}), S("3/2"));
  EXPECT_THROW(specialize(S("q12"), {{Var::q(1, 2), Scalar(0)}}), Error);
  // partial specialization to a scalar
  EXPECT_EQ(specialize(S("q13/(q12*q23)"), {{Var::q(1, 3), S("a*q12*q23")}}), S("a"));
}

TEST(Scalars, Omega) {
  Scalar w(Var::omega());
  EXPECT_TRUE((w * w + w + 1).is_zero());
  EXPECT_TRUE((w * w * w).is_one());
  Scalar x = 1 / (1 - w);
  EXPECT_TRUE((x * (1 - w)).is_one());
  EXPECT_FALSE(x.den().has_var(Var::omega()));
  EXPECT_EQ(Scalar::parse(x.str()), x);
}

TEST(Scalars, SeriesTruncation) {
  Var e = Var::eps();
  Scalar c = S("c");
  TruncSeries x(e, 1, {Scalar(1), c}), y(e, 1, {Scalar(1), -c});
  EXPECT_EQ(x * y, TruncSeries(e, 1, {Scalar(1)}));
  Var h = Var::h();
  TruncSeries r(h, 2, {Scalar(1), S("r")}), s(h, 2, {Scalar(1), S("s")});
  EXPECT_EQ(r * s, TruncSeries(h, 2, {Scalar(1), S("r+s"), S("r*s")}));
  EXPECT_THROW(x * r, Error);
  // coefficient extraction against full expansion
  Scalar full = S("(1+h)*(1+h*p12)");
  EXPECT_EQ(coeff_of(full, h, 1), S("1 + p12"));
  auto ser = TruncSeries::expand(full, h, 2);
  EXPECT_EQ(ser.coeff(1), S("1 + p12"));
  EXPECT_EQ(ser.coeff(2), S("p12"));
  auto inv = TruncSeries::expand(S("1/(1+h)"), h, 2);
  EXPECT_EQ(inv.coeff(2), Scalar(1));
  EXPECT_THROW(TruncSeries::expand(S("1/h"), h, 1), Error);
}

TEST(ScalarProperties, RingAxiomsAndIdempotence) {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(Scalar::frac(x.num(), x.den()), x);
    EXPECT_EQ(Scalar::parse(x.str()), x);
    if (!y.is_zero()) EXPECT_EQ((x / y) * y, x);
  }
}

TEST(ScalarProperties, SpecializeIsHomomorphism) {
  std::mt19937 rng(11);
  ParamAssignment asg{{Var::a(), S("5/7")}, {Var::q(1, 2), S("-3/2")}, {Var::q(2, 3), S("11/13")}};
  for (int it = 0; it < 60; ++it) {
    Scalar x = random_scalar(rng), y = random_scalar(rng);
    try {
      Scalar sx = specialize(x, asg), sy = specialize(y, asg);
      EXPECT_EQ(specialize(x * y, asg), sx * sy);
      EXPECT_EQ(specialize(x + y, asg), sx + sy);
      EXPECT_EQ(specialize(x - y, asg), sx - sy);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DenominatorVanishes);
    }
  }
}

TEST(Gcd, Multivariate) {
  Poly f = S("(a+q12)*(a*q12 - 1)^2*(q23 + 2)").num();
  Poly g = S("(a+q12)*(a*q12 - 1)*(q23 - 2)").num();
  EXPECT_EQ(gcd(f, g), S("(a+q12)*(a*q12-1)").num());
  EXPECT_TRUE(gcd(S("a+1").num(), S("a-1").num()).is_one());
}
