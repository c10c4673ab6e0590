#include <benchmark/benchmark.h>

#include "skew/fuzz.hpp"
#include "skew/hermitian.hpp"
#include "skew/inequalities.hpp"
#include "skew/metric_adjusted.hpp"
#include "skew/random.hpp"
#include "skew/skew_information.hpp"

namespace {

using namespace skew;

struct Instance {
  DensityMatrix rho;
  Observable a;
  Observable b;
};

Instance instance(std::size_t n) {
  KeyedStream s(99, n);
  auto rho = sample_density(s, n, 0.05);
  auto a = sample_observable(s, n);
  auto b = sample_observable(s, n);
  return {std::move(rho), std::move(a), std::move(b)};
}

void BM_Eigendecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = instance(n).a.matrix();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigendecompose(m));
}
BENCHMARK(BM_Eigendecompose)->RangeMultiplier(2)->Range(2, 16);

void BM_SkewInformation(benchmark::State& state) {
  const auto in = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wyd_skew_information(in.rho, in.a, 0.3));
}
BENCHMARK(BM_SkewInformation)->RangeMultiplier(2)->Range(2, 16);

void BM_CorrF(benchmark::State& state) {
  const auto in = instance(static_cast<std::size_t>(state.range(0)));
  const auto f = MonotoneFunction::wyd(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(corr_f(in.rho, f, in.a, in.b));
}
BENCHMARK(BM_CorrF)->RangeMultiplier(2)->Range(2, 16);

void BM_CheckThm4(benchmark::State& state) {
  const auto in = instance(static_cast<std::size_t>(state.range(0)));
  CheckParams p;
  p.f = MonotoneFunction::wy();
  p.cond41_min_slack = 0.0;  // keep the scalar grid out of the loop
  for (auto _ : state) benchmark::DoNotOptimize(check_inequality(InequalityId::thm4, in.rho, in.a, in.b, p));
}
BENCHMARK(BM_CheckThm4)->Arg(2)->Arg(4)->Arg(8);

// One fuzz trial of the gamma-swept ids, with the per-alpha cache doing its job.
void BM_FuzzTrial(benchmark::State& state) {
  RandomModelConfig c;
  c.seed = 1;
  c.dim = static_cast<std::size_t>(state.range(0));
  c.trials = 64;
  c.threads = 1;
  c.alpha_grid = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  c.gamma_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  c.inequality_ids = {InequalityId::thm3s};
  for (auto _ : state) benchmark::DoNotOptimize(run_fuzz(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}
BENCHMARK(BM_FuzzTrial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
