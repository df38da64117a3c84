#include <benchmark/benchmark.h>

#include <cmath>

#include "hahnev/hahn.hpp"
#include "hahnev/nevanlinna.hpp"
#include "hahnev/verify.hpp"

using namespace hahnev;

namespace {

Poly chebyshev_like(int deg) {
  // Deterministic dense coefficients with mixed signs and scales.
  std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k)
    c[k] = cplx(std::cos(1.7 * k + 0.3), std::sin(2.3 * k - 0.5)) /
           (1.0 + 0.15 * k);
  return Poly(std::move(c));
}

RatFun bench_function() {
  return RatFun(chebyshev_like(5), chebyshev_like(4));
}

void BM_find_roots(benchmark::State& state) {
  Poly p = chebyshev_like(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p));
}
BENCHMARK(BM_find_roots)->Arg(8)->Arg(24)->Arg(48)->Arg(96)
    ->Unit(benchmark::kMicrosecond);

void BM_hahn_iter(benchmark::State& state) {
  RatFun g = bench_function();
  HahnParams p{0.5, 0.3};
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hahn_iter(g, k, p));
}
BENCHMARK(BM_hahn_iter)->Arg(1)->Arg(2)->Arg(3)->Arg(4)
    ->Unit(benchmark::kMillisecond);

void BM_proximity(benchmark::State& state) {
  RatFun g = bench_function();
  ProximityKernel kernel(g, ExtValue::inf());
  double r = std::pow(2.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(r));
}
BENCHMARK(BM_proximity)->Arg(2)->Arg(10)->Arg(20)
    ->Unit(benchmark::kMicrosecond);

void BM_smt_check(benchmark::State& state) {
  RatFun g = RatFun::z() + pow(RatFun::z(), -1);
  HahnParams p{0.5, 0.3};
  RadiusGrid grid{1.0, 1048576.0, static_cast<int>(state.range(0))};
  std::vector<ExtValue> targets{cplx(2.0), cplx(-2.0), ExtValue::inf()};
  for (auto _ : state)
    benchmark::DoNotOptimize(check_smt(g, targets, p, grid));
}
BENCHMARK(BM_smt_check)->Arg(11)->Arg(41)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
