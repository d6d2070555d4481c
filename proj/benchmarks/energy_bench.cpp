#include "nlvar/energy.hpp"
#include "nlvar/represent.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

using namespace nlvar;

GridFunction smooth(const Domain& d) {
  return GridFunction::sample(d, [](const Point& x) { return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]); });
}

void BM_BallEnergy(benchmark::State& state) {
  const Domain d = Domain::unit_box(2, static_cast<int>(state.range(0)));
  const double p = state.range(1) / 10.0;
  const Kernel k = Kernel::ball_average(d, d.center(), 0.1);
  const GridFunction u = smooth(d);
  std::vector<double> g(d.size());
  for (auto _ : state) benchmark::DoNotOptimize(kernel_energy(k, u.values(), p, g));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(d.size()));
}
BENCHMARK(BM_BallEnergy)->Args({127, 20})->Args({127, 15})->Args({255, 20})->Args({255, 15})->Args({255, 30});

void BM_StripEnergy(benchmark::State& state) {
  const Domain d = Domain::unit_box(2, static_cast<int>(state.range(0)));
  const Kernel k = Kernel::strip(d, 16);
  const GridFunction u = smooth(d);
  std::vector<double> g(d.size());
  for (auto _ : state) benchmark::DoNotOptimize(kernel_energy(k, u.values(), 2.0, g));
}
BENCHMARK(BM_StripEnergy)->Arg(255)->Arg(511);

void BM_GradientEnergy(benchmark::State& state) {
  const Domain d = Domain::unit_box(2, static_cast<int>(state.range(0)));
  const GridFunction u = smooth(d);
  const auto spec = FunctionalSpec::gradient_only(d, 1.5);
  std::vector<double> g(d.size());
  for (auto _ : state) benchmark::DoNotOptimize(energy_and_gradient(spec, u.values(), g));
}
BENCHMARK(BM_GradientEnergy)->Arg(255)->Arg(511);

void BM_PMedian(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  WeightedSample s;
  for (long i = 0; i < state.range(0); ++i) {
    s.values.push_back(n(rng));
    s.weights.push_back(1.0);
  }
  const double p = state.range(1) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(p_median(s, p).t);
}
BENCHMARK(BM_PMedian)->Args({10000, 15})->Args({10000, 30})->Args({100000, 15});

void BM_Certificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nonrepresentability_certificate(3.0, 1.0).max_abs_residual);
}
BENCHMARK(BM_Certificate)->Unit(benchmark::kMillisecond);

}  // namespace
