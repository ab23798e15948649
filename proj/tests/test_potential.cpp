#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phaseflow/errors.hpp"
#include "phaseflow/potential.hpp"

using namespace phaseflow;

namespace {

// Closed forms written out independently of the library.
double F(double s, double th) { return 0.5 * th * ((1 + s) * std::log(1 + s) + (1 - s) * std::log(1 - s)); }
double F1(double s, double th) { return 0.5 * th * std::log((1 + s) / (1 - s)); }
double F2(double s, double th) { return th / (1 - s * s); }
double F3(double s, double th) { return 2 * th * s / ((1 - s) * (1 - s) * (1 + s) * (1 + s)); }

double bisect_alpha(double th)
{
  double lo = 0.0, hi = 1.0 - 1e-16;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (F1(mid, th) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PotentialParams params(double theta, double theta0 = 2.0 * 3.0, double eps = 0.01)
{
  PotentialParams p;
  p.theta = theta;
  p.theta0 = theta0;
  p.epsilon = eps;
  return p;
}

}  // namespace

TEST_CASE("parameter validation")
{
  CHECK(PotentialParams{}.violations().empty());
  CHECK_FALSE(params(2.0, 1.0).violations().empty());
  CHECK_FALSE(params(1.0, 1.0).violations().empty());
  CHECK_FALSE(params(-1.0, 1.0).violations().empty());
  CHECK_FALSE(params(1.0, 2.0, 0.5).violations().empty());
  CHECK_FALSE(params(1.0, 2.0, 0.0).violations().empty());
  CHECK(params(2.0, 1.0, 0.7).violations().size() == 2);
  CHECK_THROWS_AS(params(2.0, 1.0).validate(), std::invalid_argument);
}

TEST_CASE("psi at the center and the endpoints")
{
  for (double th : {0.5, 1.0, 1.7}) {
    const auto p = params(th, 2.0);
    CHECK(psi(0.0, p) == 0.0);
    CHECK(psi_prime(0.0, p) == 0.0);
    const double end = th * std::log(2.0) - 1.0;
    CHECK(psi(1.0, p) == doctest::Approx(end).epsilon(1e-15));
    CHECK(psi(-1.0, p) == doctest::Approx(end).epsilon(1e-15));
  }
  CHECK_THROWS_AS(psi(1.5, PotentialParams{}), DomainError);
  CHECK_THROWS_AS(psi_prime(1.0, PotentialParams{}), SingularArgument);
  CHECK_THROWS_AS(psi_prime(-1.0, PotentialParams{}), SingularArgument);
}

TEST_CASE("convex part and its derivatives")
{
  const auto p2 = params(2.0, 3.0);
  CHECK(f2(0.0, p2) == 2.0);
  CHECK(f1(0.5, p2) == doctest::Approx(1.0986122886681098).epsilon(1e-15));
  CHECK(f3(0.0, p2) == 0.0);
  for (double s : {0.1, 0.5, 0.9, 0.999}) {
    CHECK(f3(-s, p2) == -f3(s, p2));
    CHECK(f4(s, p2) > 0.0);
    CHECK(f4(-s, p2) == f4(s, p2));
    CHECK(f_value(s, p2) == doctest::Approx(F(s, 2.0)).epsilon(1e-14));
    CHECK(f2(s, p2) == doctest::Approx(F2(s, 2.0)).epsilon(1e-12));
    CHECK(f3(s, p2) == doctest::Approx(F3(s, 2.0)).epsilon(1e-14));
    CHECK(psi_prime(s, p2) == doctest::Approx(F1(s, 2.0) - 3.0 * s).epsilon(1e-14));
  }
  CHECK(f_value(1.0, p2) == doctest::Approx(2.0 * std::log(2.0)));
  for (double s : {1.0, -1.0, 1.0 - 1e-16}) {
    CHECK_THROWS_AS(f1(s, p2), SingularArgument);
    CHECK_THROWS_AS(f2(s, p2), SingularArgument);
    CHECK_THROWS_AS(f3(s, p2), SingularArgument);
    CHECK_THROWS_AS(f4(s, p2), SingularArgument);
  }
}

TEST_CASE("centered differences reproduce each derivative on |s| <= 0.99")
{
  const auto p = params(1.0, 2.0);
  double worst = 0.0;
  for (int i = -99; i <= 99; ++i) {
    const double s = i / 100.0;
    const double h = 1e-4 * (1.0 - std::abs(s));
    auto cd = [&](double (*g)(double, const PotentialParams&)) { return (g(s + h, p) - g(s - h, p)) / (2 * h); };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    worst = std::max({worst, rel(cd(f_value), f1(s, p)), rel(cd(f1), f2(s, p)), rel(cd(f2), f3(s, p)),
                      rel(cd(f3), f4(s, p))});
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("convexity: F'' >= theta")
{
  const auto p = params(0.7, 2.0);
  for (int i = -999; i <= 999; ++i) CHECK(f2(i / 1000.0, p) >= 0.7);
}

TEST_CASE("regularized potential")
{
  for (double eps : {0.1, 0.01}) {
    const auto p = params(1.0, 2.0, eps);
    SUBCASE("equals F on the inner interval")
    {
      for (int i = 0; i <= 2000; ++i) {
        const double s = -1.0 + eps + (2.0 - 2.0 * eps) * i / 2000.0;
        if (std::abs(s) > 1.0 - eps) continue;
        CHECK(f_eps(s, p) == f_value(s, p));
        CHECK(f_eps1(s, p) == f1(s, p));
        CHECK(f_eps2(s, p) == f2(s, p));
      }
      CHECK(f_eps(1.0 - eps, p) == f_value(1.0 - eps, p));
      CHECK(f_eps(-1.0 + eps, p) == f_value(-1.0 + eps, p));
    }
    SUBCASE("C2 junctions")
    {
      for (double a : {1.0 - eps, -1.0 + eps}) {
        const double left = std::nextafter(a, -2.0), right = std::nextafter(a, 2.0);
        CHECK(std::abs(f_eps(right, p) - f_eps(left, p)) < 1e-12);
        CHECK(std::abs(f_eps1(right, p) - f_eps1(left, p)) < 1e-12);
        CHECK(std::abs(f_eps2(right, p) - f_eps2(left, p)) < 1e-12 * f2(a, p));
      }
    }
    SUBCASE("quadratic outside, defined everywhere")
    {
      for (double s : {1.0, 1.5, 3.0, -1.0, -4.0}) {
        CHECK(std::isfinite(f_eps(s, p)));
        CHECK(f_eps2(s, p) == f2(s > 0 ? 1.0 - eps : -1.0 + eps, p));
      }
    }
  }
  const auto p = params(1.0, 2.0, 0.1);
  const double a = 0.9, d = 1.1;
  const double expect = F(a, 1.0) + F1(a, 1.0) * d + F2(a, 1.0) * d * d / 2.0;
  CHECK(f_eps(2.0, p) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(f_eps(-2.0, p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("F_eps converges to F monotonically")
{
  for (double s : {0.95, -0.97, 0.99}) {
    double prev = INFINITY;
    for (double eps : {0.3, 0.2, 0.1, 0.05, 0.02, 0.005}) {
      const double gap = std::abs(f_value(s, params(1.0, 2.0, eps)) - f_eps(s, params(1.0, 2.0, eps)));
      CHECK(gap <= prev);
      prev = gap;
    }
    CHECK(prev == 0.0);
  }
}

TEST_CASE("mode dispatch")
{
  const auto p = params(1.0, 2.0, 0.05);
  CHECK(convex_d1(0.99, p, PotentialMode::regularized) == f_eps1(0.99, p));
  CHECK(convex_d1(0.5, p, PotentialMode::singular) == f1(0.5, p));
  CHECK(potential_value(0.3, p, PotentialMode::singular) == doctest::Approx(psi(0.3, p)));
  CHECK(std::isfinite(potential_value(1.2, p, PotentialMode::regularized)));
}

TEST_CASE("entropy integrals")
{
  const Grid g(64, 64);
  const double area = 4.0 * std::numbers::pi * std::numbers::pi;
  SUBCASE("zero field")
  {
    const auto e = entropy_integrals(ScalarField(g, 0.0), params(1.3, 2.0));
    CHECK(e.l1 == doctest::Approx(1.3 * area).epsilon(1e-12));
    CHECK(e.cross == 0.0);
    CHECK(e.sq_log == doctest::Approx(1.69 * std::log(2.3) * area).epsilon(1e-12));
  }
  SUBCASE("0.5 cos x against a refined one-dimensional trapezoid rule")
  {
    const auto phi = ScalarField::from_function(g, [](double x, double) { return 0.5 * std::cos(x); });
    const auto e = entropy_integrals(phi, params(1.0, 2.0));
    const int n = 4096;
    double l1 = 0, sq = 0, cross = 0;
    for (int i = 0; i < n; ++i) {
      const double s = 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
      l1 += F2(s, 1.0);
      sq += F2(s, 1.0) * F2(s, 1.0) * std::log(1.0 + F2(s, 1.0));
      cross += F3(s, 1.0) * F1(s, 1.0);
    }
    const double w = area / n;
    CHECK(std::abs(e.l1 - l1 * w) < 1e-8);
    CHECK(std::abs(e.sq_log - sq * w) < 1e-8);
    CHECK(std::abs(e.cross - cross * w) < 1e-8);
    CHECK(e.cross > 0.0);
  }
  SUBCASE("rejects samples at the pure states")
  {
    ScalarField phi(g, 0.0);
    phi[5] = 1.0;
    CHECK_THROWS_AS(entropy_integrals(phi, params(1.0, 2.0)), SingularArgument);
  }
}

TEST_CASE("inequality constants: closed form against bisection")
{
  for (double th : {0.5, 1.0, 2.0}) {
    const auto c = entropy_constants(th);
    const double alpha = bisect_alpha(th);
    CHECK(std::abs(c.alpha - alpha) < 1e-14);
    CHECK(c.c0 == doctest::Approx(std::log(2 * th)));
    CHECK(c.c2 == doctest::Approx(4.0 / th + std::log(2 * th)));
    CHECK(c.c1 == doctest::Approx(std::log(2 * th) * F3(alpha, th)).epsilon(1e-12));
    CHECK(c.c3 == doctest::Approx(th / 0.75));
    CHECK(c.c4 == doctest::Approx(3.0 / (4.0 * F1(0.5, th))));
  }
}

TEST_CASE("pointwise entropy inequalities hold samplewise")
{
  for (double th : {0.5, 1.0, 2.0}) {
    const auto reports = check_entropy_inequalities(th, 100000);
    REQUIRE(reports.size() == 2);
    for (const auto& r : reports) {
      CHECK(r.pass());
      CHECK(r.points == 100000);
    }
    // second route: the test's own formulas on a different point set
    const double alpha = bisect_alpha(th);
    const double c2 = 4.0 / th + std::log(2 * th), c1 = std::log(2 * th) * F3(alpha, th);
    const double c3 = F2(0.5, th), c4 = 3.0 / (4.0 * F1(0.5, th));
    int bad = 0;
    for (int i = 0; i < 30001; ++i) {
      const double s = -1.0 + 1e-6 + (2.0 - 2e-6) * (i + 0.37) / 30001.0;
      const double f3v = F3(s, th);
      const double lhs1 = f3v == 0.0 ? 0.0 : std::abs(f3v) * std::log(std::abs(f3v));
      if (lhs1 > c1 + c2 * f3v * F1(s, th) + 1e-9 * std::abs(lhs1)) ++bad;
      if (F2(s, th) > c3 + c4 * f3v * F1(s, th) + 1e-12 * F2(s, th)) ++bad;
    }
    CHECK(bad == 0);
  }
}
