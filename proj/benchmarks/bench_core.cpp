#include <benchmark/benchmark.h>

#include "mqg/deform.hpp"
#include "mqg/lie.hpp"
#include "mqg/linalg.hpp"
#include "mqg/manin.hpp"
#include "mqg/quantum.hpp"

using namespace mqg;

static void BM_ScalarArithmetic(benchmark::State& st) {
  Scalar a = Scalar::parse("(q12 + a)/(q12 - 1)"), b = Scalar::parse("a^2*q12/(a + 1)");
  for (auto _ : st) {
    Scalar c = (a * b + a) / (b - a);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ScalarArithmetic);

static void BM_BraidDefect(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  LinOp p = standard_P(QData::symbolic(n));
  for (auto _ : st) benchmark::DoNotOptimize(braid_defect(p));
}
BENCHMARK(BM_BraidDefect)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FrtGl2(benchmark::State& st) {
  LinOp p = gl2_P(Scalar::parse("q"), Scalar::parse("qp"));
  for (auto _ : st) benchmark::DoNotOptimize(frt_relations(p));
}
BENCHMARK(BM_FrtGl2)->Unit(benchmark::kMillisecond);

static void BM_FirstOrderSpace(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  QData qd = QData::symbolic(n);
  for (auto _ : st) benchmark::DoNotOptimize(first_order_space(qd).dim_essential);
}
BENCHMARK(BM_FirstOrderSpace)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DifferentialRank(benchmark::State& st) {
  SlData s = build_sl(3);
  ExactMatrix d = ce_differential(s.g.eps, static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(rank(d));
}
BENCHMARK(BM_DifferentialRank)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_H2Sl3Symbolic(benchmark::State& st) {
  SlData s = build_sl(3);
  Mat t = symbolic_r0_hat(2);
  for (auto _ : st) benchmark::DoNotOptimize(h2_dual(s, t).dim_essential);
}
BENCHMARK(BM_H2Sl3Symbolic)->Unit(benchmark::kMillisecond);

static void BM_SecondOrderSl4(benchmark::State& st) {
  SlData s = build_sl(4);
  const auto& rs = s.roots;
  Scalar q = Scalar::parse("1/4");
  Mat t(3, std::vector<Scalar>(3));
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    t[i][j] = q;
    t[j][i] = -q;
  }
  GTensor r = standard_r(s, t);
  GTensor r1 = wedge2(15, rs.basis_of({1, 0, 0}), rs.basis_of({0, -1, 0})) +
               wedge2(15, rs.basis_of({0, 1, 0}), rs.basis_of({0, 0, -1}));
  for (auto _ : st) benchmark::DoNotOptimize(second_order_step(s, r, r1).r2.has_value());
}
BENCHMARK(BM_SecondOrderSl4)->Unit(benchmark::kMillisecond);

static void BM_ManinSplitSl3(benchmark::State& st) {
  SlData s = build_sl(3);
  GTensor r = standard_r(s, symbolic_r0_hat(2));
  DoubleAlgebra d = build_double(s.g, dual_bracket(s.g, r));
  for (auto _ : st) benchmark::DoNotOptimize(split_double(d, r).kappa1);
}
BENCHMARK(BM_ManinSplitSl3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
