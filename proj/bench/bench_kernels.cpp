// OpenMP kernels against their serial reference loops, plus one full nsac
// step with the team capped at one thread and uncapped.
//
//   build/bench/bench_kernels --benchmark_filter=dot

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "phaseflow/kernels.hpp"
#include "phaseflow/nsac.hpp"
#include "phaseflow/random_fields.hpp"

namespace kernels = phaseflow::kernels;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

template <double (*F)(std::span<const double>)>
void unary_reduction(benchmark::State& state)
{
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(F(x));
  state.SetBytesProcessed(state.iterations() * state.range(0) * 8);
}

template <double (*F)(std::span<const double>, std::span<const double>)>
void binary_reduction(benchmark::State& state)
{
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1), y = noise(x.size(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(F(x, y));
  state.SetBytesProcessed(state.iterations() * state.range(0) * 16);
}

template <void (*F)(double, std::span<const double>, std::span<double>)>
void axpy_like(benchmark::State& state)
{
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  auto y = noise(x.size(), 2);
  for (auto _ : state) {
    F(1e-9, x, y);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) * 24);
}

template <void (*F)(std::span<const double>, std::span<const double>, std::span<double>)>
void multiply_like(benchmark::State& state)
{
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1), y = noise(x.size(), 2);
  std::vector<double> z(x.size());
  for (auto _ : state) {
    F(x, y, z);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) * 24);
}

void nsac_step(benchmark::State& state)
{
  kernels::set_thread_limit(static_cast<int>(state.range(1)));
  const int n = static_cast<int>(state.range(0));
  const phaseflow::Grid g(n, n);
  phaseflow::ScalarField phi = phaseflow::random_band_limited(g, 8, 3);
  phi *= 0.6 / phaseflow::max_abs(phi);
  const phaseflow::VectorField u = phaseflow::leray_project(
      phaseflow::VectorField(phaseflow::random_band_limited(g, 4, 4), phaseflow::random_band_limited(g, 4, 5)));
  const phaseflow::SimState s(u, phi);
  const phaseflow::NsacSchemeParams scheme;
  for (auto _ : state) benchmark::DoNotOptimize(phaseflow::step(s, scheme));
  kernels::set_thread_limit(0);
}

#define SIZES ->Arg(128 * 128)->Arg(256 * 256)->Arg(512 * 512)

BENCHMARK(unary_reduction<kernels::sum>)->Name("sum/parallel") SIZES;
BENCHMARK(unary_reduction<kernels::reference::sum>)->Name("sum/reference") SIZES;
BENCHMARK(unary_reduction<kernels::max_abs>)->Name("max_abs/parallel") SIZES;
BENCHMARK(unary_reduction<kernels::reference::max_abs>)->Name("max_abs/reference") SIZES;
BENCHMARK(binary_reduction<kernels::dot>)->Name("dot/parallel") SIZES;
BENCHMARK(binary_reduction<kernels::reference::dot>)->Name("dot/reference") SIZES;
BENCHMARK(axpy_like<kernels::axpy>)->Name("axpy/parallel") SIZES;
BENCHMARK(axpy_like<kernels::reference::axpy>)->Name("axpy/reference") SIZES;
BENCHMARK(multiply_like<kernels::multiply>)->Name("multiply/parallel") SIZES;
BENCHMARK(multiply_like<kernels::reference::multiply>)->Name("multiply/reference") SIZES;
BENCHMARK(nsac_step)->Name("nsac_step")->ArgNames({"n", "threads"})->Args({128, 1})->Args({128, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
