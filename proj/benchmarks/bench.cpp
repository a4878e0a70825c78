#include <benchmark/benchmark.h>

#include <random>

#include "minflex/convexgeo.hpp"
#include "minflex/psh.hpp"
#include "minflex/weierstrass.hpp"

using namespace minflex;

static void BM_ProjectBall(benchmark::State& state) {
  const ConvexBody ball = ConvexBody::ball(Vec::Zero(3), 1.0);
  std::mt19937 rng(1);
  std::normal_distribution<double> gauss;
  for (auto _ : state) {
    Vec x(3);
    for (int i = 0; i < 3; ++i) x[i] = 3.0 * gauss(rng);
    benchmark::DoNotOptimize(project(ball, x));
  }
}
BENCHMARK(BM_ProjectBall);

static void BM_ProjectPolytope(benchmark::State& state) {
  std::vector<Halfspace> hs;
  std::mt19937 rng(2);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 12; ++k) {
    Vec a(4);
    for (int i = 0; i < 4; ++i) a[i] = gauss(rng);
    hs.push_back({a.normalized(), 1.0});
  }
  const ConvexBody C = ConvexBody::from_halfspaces(4, hs);
  for (auto _ : state) {
    Vec x(4);
    for (int i = 0; i < 4; ++i) x[i] = 5.0 * gauss(rng);
    benchmark::DoNotOptimize(project(C, x));
  }
}
BENCHMARK(BM_ProjectPolytope);

static void BM_HessianPartialSum(benchmark::State& state) {
  Box box{Vec::Constant(5, -1.0), Vec::Constant(5, 1.0)};
  const ScalarField tau = ScalarField::from_expr(expr_sqnorm(), box);
  const Vec x = Vec::Constant(5, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(hessian_partial_sum(tau, x, 2));
}
BENCHMARK(BM_HessianPartialSum);

static void BM_ConformalityScan(benchmark::State& state) {
  CatalogueParams params;
  params.grid = static_cast<int>(state.range(0));
  const WeierstrassSample s = surface_catalogue("catenoid", params);
  for (auto _ : state) benchmark::DoNotOptimize(conformality_residuals(s));
}
BENCHMARK(BM_ConformalityScan)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
