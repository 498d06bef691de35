#include <benchmark/benchmark.h>

#include <cmath>

#include "infid/gamma.hpp"
#include "infid/optimizer.hpp"
#include "infid/theorems.hpp"

using namespace infid;

static void BM_RestrictedConjugateEntropy(benchmark::State& state) {
  const auto g = GammaFn::entropy();
  double mu = -20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.restricted_conjugate(mu));
    mu = mu > 20.0 ? -20.0 : mu + 0.013;
  }
}
BENCHMARK(BM_RestrictedConjugateEntropy);

static void BM_ConjugateOracle(benchmark::State& state) {
  const auto g = GammaFn::quadratic(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_oracle(g, 0.37, 1e-5));
}
BENCHMARK(BM_ConjugateOracle);

static void BM_EstimateInfFinite(benchmark::State& state) {
  const Space space = Space::l2(static_cast<std::size_t>(state.range(0)));
  const auto f = [](ConstVectorView x) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) v += std::abs(x[i] - 0.5 * static_cast<double>(i)) + 0.1 * x[i];
    return v;
  };
  SearchBudget budget;
  budget.starts = 8;
  budget.iters_per_start = 500;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_inf(f, space, budget).value);
}
BENCHMARK(BM_EstimateInfFinite)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_VerifyTheorem1(benchmark::State& state) {
  const auto inst = generate_instance(5, Space::l2(2), Regime::Equal);
  const auto g = GammaFn::entropy();
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(inst, g, SearchBudget{}).gap);
}
BENCHMARK(BM_VerifyTheorem1)->Unit(benchmark::kMillisecond);

static void BM_FixedPointIterate(benchmark::State& state) {
  const auto inst = generate_instance(7, Space::l2(3), Regime::Equal);
  const Vector x0{9.0, -4.0, 2.5};
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_iterate(inst, 0.9, 0.0, x0).iterations);
}
BENCHMARK(BM_FixedPointIterate);
BENCHMARK_MAIN();
