#include <benchmark/benchmark.h>

#include "qot/eig.hpp"
#include "qot/matrix.hpp"
#include "qot/rng.hpp"
#include "qot/tensor.hpp"

using namespace qot;

static void BM_MatMul(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  Rng rng(1);
  CMat a = random_hermitian(rng, d);
  CMat b = random_hermitian(rng, d);
  for (auto _ : state) {
    CMat c = a * b;
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_MatMul)->Arg(16)->Arg(64)->Arg(256);

static void BM_HermEig(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  Rng rng(2);
  CMat a = random_hermitian(rng, d);
  for (auto _ : state) {
    EigResult e = herm_eig(a);
    benchmark::DoNotOptimize(e.vectors.data());
  }
}
BENCHMARK(BM_HermEig)->Arg(8)->Arg(16)->Arg(64)->Arg(256);

static void BM_PartialTrace(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i;
  RegisterShape shape(2, labels);
  Rng rng(3);
  CMat a = random_hermitian(rng, static_cast<int>(shape.dim()));
  for (auto _ : state) {
    CMat r = partial_trace(a, shape, {0});
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_PartialTrace)->Arg(3)->Arg(4);

static void BM_SiteAverage(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i;
  RegisterShape shape(2, labels);
  Rng rng(4);
  CMat a = random_hermitian(rng, static_cast<int>(shape.dim()));
  for (auto _ : state) {
    CMat r = site_average(a, shape, 1);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_SiteAverage)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
