// Serial reference path against the OpenMP path for the grid sweeps.

#include <benchmark/benchmark.h>

#include "cdscale/canonical.hpp"
#include "cdscale/cdkernel.hpp"
#include "cdscale/limits.hpp"

using namespace cdscale;

namespace {

Exec exec_for(int threads) { return threads == 0 ? Exec::serial() : Exec::parallel(threads); }

void BM_ScaledGrid(benchmark::State& state) {
  const auto pts = to_complex(uniform_grid(-5.0, 5.0, 41));
  const auto exec = exec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scaled_grid(CoefficientModel::free(), 4000, 0.0, pts, pts, exec));
  }
}

void BM_TrajectoryDistance(benchmark::State& state) {
  const std::size_t n = 4000;
  const auto h = h_sequence(CoefficientModel::free(), n, 0.0, n);
  const auto a = uniform_grid(-5.0, 5.0, 101), t = uniform_grid(0.0, 1.0, 101);
  const Mat2 half = Mat2::diag(0.5, 0.5);
  const auto exec = exec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        trajectory_distance(h, n, a, t, [&half](cplx aa, double tt) { return solve_constant(half, aa, tt); }, exec));
  }
}

void BM_CanonicalGrid(benchmark::State& state) {
  const auto pts = to_complex(uniform_grid(-5.0, 5.0, 21));
  const auto sys = CanonicalSystem::cosh_sinh(1.0);
  const auto exec = exec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_grid(sys, pts, pts, kDefaultStep, exec));
}

}  // namespace

// Argument: 0 = serial reference, N = OpenMP team size.
BENCHMARK(BM_ScaledGrid)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectoryDistance)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalGrid)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
