#include <benchmark/benchmark.h>

#include "enosv/cases.hpp"
#include "enosv/solver.hpp"

namespace {

using namespace enosv;

void BM_SodRhs(benchmark::State& state) {
  const int subcells = static_cast<int>(state.range(0));
  const TestCase tc = case_sod();
  const Grid g = Grid::uniform(tc.lo, tc.hi, 400 / subcells, subcells);
  SolverConfig c;
  c.continuous = subcells - 1;
  const SimulationState s = initial_state(tc, g, c);
  Solver solver(g, c);
  for (auto _ : state) benchmark::DoNotOptimize(solver.rhs(s));
  state.SetItemsProcessed(state.iterations() * g.total_subcells());
}
BENCHMARK(BM_SodRhs)->Arg(4)->Arg(8);

void BM_AdvectionStep(benchmark::State& state) {
  const TestCase tc = case_advection();
  const Grid g = Grid::uniform(tc.lo, tc.hi, 32, 4);
  SimulationState s = initial_state(tc, g, {});
  Solver solver(g, s.config);
  const double dt = solver.compute_dt(s);
  for (auto _ : state) s = solver.step(s, dt);
}
BENCHMARK(BM_AdvectionStep);

}  // namespace
