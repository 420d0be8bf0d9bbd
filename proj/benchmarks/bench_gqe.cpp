#include <benchmark/benchmark.h>

#include "gqe/catalog.hpp"
#include "gqe/expression.hpp"
#include "gqe/geometry.hpp"
#include "gqe/oracle.hpp"
#include "gqe/phi_transform.hpp"
#include "gqe/verify.hpp"

namespace {

void BM_RicciOnGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto metric = gqe::example1_metric(n);
  const auto points = gqe::box_points(n, 256, -1, 1, 1);
  for (auto _ : state) {
    for (const auto& x : points) benchmark::DoNotOptimize(gqe::ricci_at(metric, x));
  }
  state.SetItemsProcessed(state.iterations() * points.size());
}
BENCHMARK(BM_RicciOnGrid)->Arg(3)->Arg(5)->Arg(8);

void BM_ResidualAt(benchmark::State& state) {
  const auto s = gqe::example1(static_cast<int>(state.range(0)));
  const gqe::Vector x(state.range(0), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(gqe::residual_at(s, x));
}
BENCHMARK(BM_ResidualAt)->Arg(3)->Arg(5);

void BM_FdCurvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto raw = gqe::RawMetric::conformal(gqe::sphere_chart_metric(n).factor());
  const gqe::Vector x(n, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(gqe::fd_curvature(raw, x));
}
BENCHMARK(BM_FdCurvature)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_ExpressionParse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqe::Expression::parse("exp(-r^2/2) * (1 + tanh(r)) / (1 + r)", "r"));
  }
}
BENCHMARK(BM_ExpressionParse);

void BM_ExpressionJet(benchmark::State& state) {
  const auto e = gqe::Expression::parse("exp(-r^2/2) * (1 + tanh(r)) / (1 + r)", "r");
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.evaluate_jet(t));
    t += 1e-9;
  }
}
BENCHMARK(BM_ExpressionJet);

void BM_PhiTransformBuild(benchmark::State& state) {
  const auto v = gqe::Profile1D::constant(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(gqe::phi_from_v(v, 1.0, 0.0, 0.0, -4.0, 4.0));
}
BENCHMARK(BM_PhiTransformBuild)->Unit(benchmark::kMicrosecond);

void BM_PhiTransformEval(benchmark::State& state) {
  const auto s = gqe::example1(3);
  const auto pt = gqe::potential_transform(s, 0.0, 9.0);
  benchmark::DoNotOptimize(pt.jet(0.1));  // builds the cumulative table
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pt.jet(t));
    t = t > 8.9 ? 0.1 : t + 0.01;
  }
}
BENCHMARK(BM_PhiTransformEval);

void BM_VerifyStructure(benchmark::State& state) {
  const auto s = gqe::example2(3);
  const auto points = gqe::default_grid(s);
  for (auto _ : state) benchmark::DoNotOptimize(gqe::verify_structure(s, points));
  state.SetItemsProcessed(state.iterations() * points.size());
}
BENCHMARK(BM_VerifyStructure)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
