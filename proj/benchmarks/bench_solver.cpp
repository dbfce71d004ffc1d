#include <benchmark/benchmark.h>

#include "mtsolve/anderson.hpp"
#include "mtsolve/problems.hpp"
#include "mtsolve/solver.hpp"
#include "mtsolve/splitting.hpp"
#include "mtsolve/tensor.hpp"

namespace {

using mtsolve::DenseTensor;
using mtsolve::Vector;

void BM_Apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = mtsolve::gen_ex5(n);
  const Vector x = Vector::Constant(n, 1.0 / n);
  for (auto _ : state) benchmark::DoNotOptimize(mtsolve::apply(a, x));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size()));
}
BENCHMARK(BM_Apply)->Arg(50)->Arg(100)->Arg(200);

void BM_EvalG(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = mtsolve::gen_ex5(n);
  const auto s = mtsolve::build_splitting(a, mtsolve::SplittingKind::gauss_seidel());
  const Vector b = Vector::Ones(n);
  const Vector x = Vector::Constant(n, 1.0 / n);
  for (auto _ : state) benchmark::DoNotOptimize(mtsolve::eval_g(s, b, x));
}
BENCHMARK(BM_EvalG)->Arg(50)->Arg(200);

void BM_SolveAlpha(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const int n = 200;
  mtsolve::AndersonWindow w(depth, n);
  for (int i = 0; i <= depth; ++i) w.push(Vector::Random(n), Vector::Random(n));
  for (auto _ : state) {
    const auto sol = w.solve_alpha();
    benchmark::DoNotOptimize(w.combine(sol));
  }
}
BENCHMARK(BM_SolveAlpha)->Arg(1)->Arg(3)->Arg(5);

// range(0): problem (4 or 5), range(1): window depth.
void BM_Solve(benchmark::State& state) {
  const auto id = mtsolve::ProblemId::from_number(static_cast<int>(state.range(0)));
  const int n = 200;
  const DenseTensor a = mtsolve::generate(id, n);
  const auto [b, z0] = mtsolve::rhs_and_start(id, n);
  mtsolve::SolverConfig cfg;
  cfg.kind = mtsolve::SplittingKind::gauss_seidel();
  cfg.m = static_cast<int>(state.range(1));
  int it = 0;
  for (auto _ : state) {
    const auto trace = mtsolve::solve_rtsmraa(a, b, z0, cfg);
    it = trace.iterations();
  }
  state.counters["IT"] = it;
}
BENCHMARK(BM_Solve)->Args({4, 0})->Args({4, 3})->Args({5, 0})->Args({5, 3})
    ->Unit(benchmark::kMillisecond);

void BM_Newton(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = mtsolve::gen_ex4(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mtsolve::solve_newton(a, Vector::Ones(n), Vector::Ones(n)));
  }
}
BENCHMARK(BM_Newton)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
