#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "enosv/discretization.hpp"
#include "enosv/qp.hpp"
#include "enosv/recovery.hpp"

namespace {

using namespace enosv;

std::vector<double> step_averages(int n) {
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = i < n / 2 ? 1.0 + 0.1 * i : -1.0 + 0.05 * i;
  return a;
}

void BM_Recover(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int l = static_cast<int>(state.range(1));
  const Recovery rec(chebyshev_boundaries(n - 1), n - l, l);
  const std::vector<double> avg = step_averages(n);
  for (auto _ : state) benchmark::DoNotOptimize(rec.recover(avg));
}
BENCHMARK(BM_Recover)->Args({4, 1})->Args({8, 1})->Args({10, 2});

void BM_RecoverWarmStart(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Recovery rec(chebyshev_boundaries(n - 1), n - 1, 1);
  const std::vector<double> avg = step_averages(n);
  const RecoveredFunction warm = rec.recover(avg);
  for (auto _ : state) benchmark::DoNotOptimize(rec.recover(avg, &warm));
}
BENCHMARK(BM_RecoverWarmStart)->Arg(4)->Arg(8);

void BM_ActiveSet(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  QpProblem p;
  p.matrix.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p.matrix(i, j) = g(rng) + (i == j ? 4.0 : 0.0);
  p.target.resize(m);
  for (int i = 0; i < m; ++i) p.target(i) = g(rng);
  p.constrained = {m - 3, m - 2, m - 1};
  for (auto _ : state) benchmark::DoNotOptimize(active_set_solve(p));
}
BENCHMARK(BM_ActiveSet)->Arg(4)->Arg(8)->Arg(12);

}  // namespace
