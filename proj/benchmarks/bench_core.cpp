#include <benchmark/benchmark.h>

#include <cmath>

#include "nht/gibbs.hpp"
#include "nht/maxent.hpp"
#include "nht/models.hpp"

namespace {

// raw biorthogonalization only up to the sizes where the family's
// eigenvector overlaps stay resolvable; beyond that the metric path applies
void BM_BiorthogonalizeToeplitz(benchmark::State& state) {
  const auto m = nht::toeplitz_model(static_cast<int>(state.range(0)), 0.4);
  const nht::ComplexMatrix a = nht::toeplitz_matrix(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::biorthogonalize(a));
  }
}
BENCHMARK(BM_BiorthogonalizeToeplitz)->Arg(12)->Arg(20);

void BM_ToeplitzPairMetric(benchmark::State& state) {
  const auto m = nht::toeplitz_model(static_cast<int>(state.range(0)), 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::toeplitz_pair(m));
  }
}
BENCHMARK(BM_ToeplitzPairMetric)->Arg(50)->Arg(100)->Arg(200);

void BM_GibbsState(benchmark::State& state) {
  const auto pair =
      nht::toeplitz_pair_two_charge(nht::toeplitz_model(static_cast<int>(state.range(0)), 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::gibbs_state(pair, 0.9, -0.2));
  }
}
BENCHMARK(BM_GibbsState)->Arg(12)->Arg(50);

void BM_GibbsScalars(benchmark::State& state) {
  const auto pair =
      nht::toeplitz_pair(nht::toeplitz_model(static_cast<int>(state.range(0)), 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::gibbs_scalars(pair, 0.9, 0.0));
  }
}
BENCHMARK(BM_GibbsScalars)->Arg(50)->Arg(200);

void BM_InferNewton(benchmark::State& state) {
  const auto pair = nht::example1();
  const auto [th, tk] = nht::forward_map(pair, 1.3, -0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::infer(pair, {th, tk}));
  }
}
BENCHMARK(BM_InferNewton);

void BM_InferIntersection(benchmark::State& state) {
  const auto pair = nht::example1();
  const auto [th, tk] = nht::forward_map(pair, 1.3, -0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::infer_by_intersection(pair, {th, tk}));
  }
}
BENCHMARK(BM_InferIntersection);

void BM_EulerMaclaurin(benchmark::State& state) {
  const auto m = nht::toeplitz_model(static_cast<int>(state.range(0)),
                                     std::sqrt(7.0) / 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nht::euler_maclaurin_partition(m, 1.0));
  }
}
BENCHMARK(BM_EulerMaclaurin)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
