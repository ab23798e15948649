#include "phaseflow/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace phaseflow::kernels {

namespace {
int g_default_threads = 0;
}

void set_thread_limit(int n)
{
  if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads);
}

int thread_limit() { return omp_get_max_threads(); }

void configure_threads_from_env()
{
  const char* env = std::getenv("PHASEFLOW_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end != env && n > 0) set_thread_limit(static_cast<int>(n));
}

double sum(std::span<const double> x)
{
  return reduce_sum(x.size(), [x](std::size_t i) { return x[i]; });
}

double dot(std::span<const double> x, std::span<const double> y)
{
  return reduce_sum(x.size(), [x, y](std::size_t i) { return x[i] * y[i]; });
}

double max_abs(std::span<const double> x)
{
  double m = 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double min_value(std::span<const double> x)
{
  double m = std::numeric_limits<double>::infinity();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(min : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double max_value(std::span<const double> x)
{
  double m = -std::numeric_limits<double>::infinity();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

void axpy(double a, std::span<const double> x, std::span<double> y)
{
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void multiply(std::span<const double> x, std::span<const double> y, std::span<double> z)
{
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) z[i] = x[i] * y[i];
}

void shift(std::span<double> x, double c)
{
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) x[i] += c;
}

void hypot2(std::span<const double> x, std::span<const double> y, std::span<double> out)
{
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
}

namespace reference {

double sum(std::span<const double> x)
{
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double dot(std::span<const double> x, std::span<const double> y)
{
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_abs(std::span<const double> x)
{
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double a, std::span<const double> x, std::span<double> y)
{
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void multiply(std::span<const double> x, std::span<const double> y, std::span<double> z)
{
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * y[i];
}

}  // namespace reference

}  // namespace phaseflow::kernels
