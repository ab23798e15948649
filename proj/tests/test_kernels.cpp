#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "phaseflow/kernels.hpp"

namespace k = phaseflow::kernels;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference")
{
  for (std::size_t n : {1ul, 7ul, 2048ul, 2049ul, 100000ul}) {
    const auto x = noise(n, 1);
    const auto y = noise(n, 2);
    CHECK(k::sum(x) == doctest::Approx(k::reference::sum(x)).epsilon(1e-12));
    CHECK(k::dot(x, y) == doctest::Approx(k::reference::dot(x, y)).epsilon(1e-12));
    CHECK(k::max_abs(x) == k::reference::max_abs(x));

    auto a = y, b = y;
    k::axpy(0.3, x, a);
    k::reference::axpy(0.3, x, b);
    CHECK(a == b);

    std::vector<double> z1(n), z2(n);
    k::multiply(x, y, z1);
    k::reference::multiply(x, y, z2);
    CHECK(z1 == z2);
  }
}

TEST_CASE("reductions give the same bits for every thread count")
{
  const auto x = noise(300000, 3);
  const auto y = noise(300000, 4);
  k::set_thread_limit(1);
  const double s1 = k::sum(x), d1 = k::dot(x, y);
  for (int t : {2, 3, 8}) {
    k::set_thread_limit(t);
    CHECK(k::sum(x) == s1);
    CHECK(k::dot(x, y) == d1);
  }
  k::set_thread_limit(0);
}

TEST_CASE("min, max, shift and hypot")
{
  std::vector<double> x{3.0, -4.0, 0.5};
  CHECK(k::min_value(x) == -4.0);
  CHECK(k::max_value(x) == 3.0);
  CHECK(k::max_abs(x) == 4.0);
  k::shift(x, 1.0);
  CHECK(x == std::vector<double>{4.0, -3.0, 1.5});
  std::vector<double> out(3);
  k::hypot2(x, x, out);
  CHECK(out[0] == doctest::Approx(4.0 * std::sqrt(2.0)));
}
