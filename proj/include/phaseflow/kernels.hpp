#pragma once

// Data-parallel grid kernels.
//
// Every loop over grid samples in the library goes through this header. The
// parallel versions use OpenMP with static scheduling; reductions are blocked
// with a fixed block size and the block partials are combined serially, so a
// reduction gives the same bits for any thread count. The `reference`
// namespace holds plain serial loops that the tests and the benchmark compare
// against.

#include <cstddef>
#include <span>

namespace phaseflow::kernels {

/// Block length used by the deterministic reductions.
inline constexpr std::size_t kReduceBlock = 2048;

/// Caps the OpenMP team size; `n <= 0` restores the runtime default.
void set_thread_limit(int n);
int thread_limit();

/// Applies the `PHASEFLOW_THREADS` environment variable, if set.
void configure_threads_from_env();

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double min_value(std::span<const double> x);
double max_value(std::span<const double> x);

/// y <- a*x + y
void axpy(double a, std::span<const double> x, std::span<double> y);
/// z <- x * y (pointwise)
void multiply(std::span<const double> x, std::span<const double> y, std::span<double> z);
/// x <- x + c
void shift(std::span<double> x, double c);
/// Pointwise Euclidean norm of a 2-vector field: out = sqrt(x^2 + y^2).
void hypot2(std::span<const double> x, std::span<const double> y, std::span<double> out);

/// Generic pointwise map out[i] = f(in[i]); parallel over i.
template <class F>
void transform(std::span<const double> in, std::span<double> out, F f)
{
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(in[i]);
}

/// Generic binary pointwise map out[i] = f(a[i], b[i]).
template <class F>
void transform(std::span<const double> a, std::span<const double> b, std::span<double> out, F f)
{
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(a[i], b[i]);
}

/// Deterministic blocked sum of f(i) over [0, n).
template <class F>
double reduce_sum(std::size_t n, F f)
{
  const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  // small fixed-size stack buffer covers grids up to 1024^2
  constexpr std::size_t kStack = 512;
  double stack_partials[kStack];
  double* partials = stack_partials;
  double* heap = nullptr;
  if (nblocks > kStack) partials = heap = new double[nblocks];
  const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partials[b] = s;
  }
  double total = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) total += partials[b];
  delete[] heap;
  return total;
}

namespace reference {

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void multiply(std::span<const double> x, std::span<const double> y, std::span<double> z);

}  // namespace reference

}  // namespace phaseflow::kernels
