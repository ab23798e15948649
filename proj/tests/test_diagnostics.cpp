#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "phaseflow/diagnostics.hpp"
#include "support.hpp"

using namespace phaseflow;

namespace {

const double area = 4.0 * std::numbers::pi * std::numbers::pi;

double psi_oracle(double s, double th, double th0)
{
  return 0.5 * th * ((1 + s) * std::log(1 + s) + (1 - s) * std::log(1 - s)) - 0.5 * th0 * s * s;
}

SimState smooth_state(const Grid& g, double amp_u, double amp_phi, std::uint64_t seed)
{
  VectorField u = leray_project(testing::solenoidal_field(g, 2, seed));
  const double um = max_abs(u);
  for (auto* c : {&u.x, &u.y})
    for (auto& v : c->values()) v *= amp_u / um;
  ScalarField phi = dealias(testing::trig_field(g, 3, seed + 1));
  phi *= amp_phi / max_abs(phi);
  return SimState(u, phi);
}

double quad_sq(const ScalarField& f)
{
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().cell_area();
}

}  // namespace

TEST_CASE("energy of simple states")
{
  const Grid g(32, 32);
  SUBCASE("zero state")
  {
    const auto e = energy(SimState(VectorField(g), ScalarField(g)));
    CHECK(e.total == 0.0);
    CHECK(e.kinetic == 0.0);
    CHECK(e.gradient == 0.0);
    CHECK(e.potential == 0.0);
  }
  SUBCASE("uniform flow at density 2")
  {
    FluidParams f;
    f.rho1 = f.rho2 = 2.0;
    const SimState s(VectorField(ScalarField(g, 1.0), ScalarField(g)), ScalarField(g), {}, f);
    CHECK(energy(s).kinetic == doctest::Approx(area).epsilon(1e-14));
  }
  SUBCASE("gradient part of 0.5 cos x")
  {
    FluidParams f;
    f.sigma = 1.7;
    const auto phi = ScalarField::from_function(g, [](double x, double) { return 0.5 * std::cos(x); });
    const auto e = energy(SimState(VectorField(g), phi, {}, f));
    CHECK(e.gradient == doctest::Approx(1.7 * area / 16.0).epsilon(1e-13));
    CHECK(e.kinetic == 0.0);
  }
  SUBCASE("potential part of a constant")
  {
    PotentialParams p;
    const auto e = energy(SimState(VectorField(g), ScalarField(g, 0.3), p));
    CHECK(e.potential == doctest::Approx(area * psi_oracle(0.3, p.theta, p.theta0)).epsilon(1e-13));
  }
  SUBCASE("parts sum to the total; transport drops the potential")
  {
    const SimState s = smooth_state(g, 0.4, 0.6, 21);
    const auto e = energy(s);
    CHECK(e.total == doctest::Approx(e.kinetic + e.gradient + e.potential).epsilon(1e-15));
    const auto et = energy(s, Model::transport);
    CHECK(et.potential == 0.0);
    CHECK(et.total == doctest::Approx(e.kinetic + e.gradient).epsilon(1e-15));
  }
}

TEST_CASE("viscous dissipation of a shear")
{
  // u = (sin y, 0): Du has off-diagonal cos(y)/2, so 2 nu |Du|^2 = nu cos^2 y
  const Grid g(32, 32);
  const auto sy = ScalarField::from_function(g, [](double, double y) { return std::sin(y); });
  FluidParams f;
  f.nu1 = f.nu2 = 0.3;
  CHECK(viscous_dissipation(VectorField(sy, ScalarField(g)), ScalarField(g), f) ==
        doctest::Approx(0.3 * area / 2.0).epsilon(1e-13));
}

TEST_CASE("dissipation residual")
{
  SUBCASE("vanishes for a stationary uniform state")
  {
    const Grid g(32, 32);
    const SimState s(VectorField(g), ScalarField(g, 0.2));
    const NsacSchemeParams scheme;
    const SimState next = step(s, scheme);
    CHECK(std::abs(dissipation_residual(s, next, scheme.dt)) < 1e-12);
  }
  SUBCASE("first order in dt at matched density")
  {
    const Grid g(64, 64);
    const SimState s = smooth_state(g, 0.5, 0.5, 31);
    auto residual_at = [&](double dt) {
      NsacSchemeParams scheme;
      scheme.dt = dt;
      return dissipation_residual(s, step_matched(s, scheme), dt);
    };
    const double r1 = residual_at(1e-3), r2 = residual_at(5e-4);
    MESSAGE("residual " << r1 << " at dt = 1e-3, " << r2 << " at 5e-4");
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("inviscid version has no viscous term")
  {
    const Grid g(64, 64);
    const auto w = ScalarField::from_function(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
    ScalarField phi = dealias(testing::trig_field(g, 2, 41));
    phi *= 0.5 / max_abs(phi);
    const EulerState prev(w, phi);
    const double dt = 1e-3;
    const EulerState next = step(prev, dt);
    const VectorField u = velocity_from_vorticity(prev.omega);
    const VectorField gp = gradient(prev.phi);
    ScalarField rate(g);
    for (std::size_t k = 0; k < g.size(); ++k)
      rate[k] = (next.phi[k] - prev.phi[k]) / dt + u.x[k] * gp.x[k] + u.y[k] * gp.y[k];
    const double expect = (energy(next).total - energy(prev).total) / dt + quad_sq(rate);
    CHECK(dissipation_residual(prev, next, dt) == doctest::Approx(expect).epsilon(1e-9));
  }
  SUBCASE("rejects a non-positive step")
  {
    const Grid g(16, 16);
    const SimState s{VectorField(g), ScalarField(g)};
    CHECK_THROWS_AS(dissipation_residual(s, s, 0.0), std::invalid_argument);
  }
}

TEST_CASE("records")
{
  const Grid g(32, 32);
  const SimState s = smooth_state(g, 0.3, 0.7, 51);
  const auto r = make_record(s, Model::nsac);
  CHECK(std::isnan(r.dissipation_residual));
  CHECK(r.mass == doctest::Approx(mean(s.phi)));
  CHECK(r.separation_delta == doctest::Approx(1.0 - max_abs(s.phi)));
  CHECK(std::isfinite(r.entropy_l1));
  CHECK(r.enstrophy == doctest::Approx(0.5 * quad_sq(curl(s.u))));

  ScalarField pure(g, 0.0);
  pure[3] = 1.0;
  const auto rp = make_record(SimState(VectorField(g), pure, {}, {}, PotentialMode::regularized), Model::transport);
  CHECK(std::isnan(rp.entropy_l1));
  CHECK(rp.separation_delta == 0.0);
}

TEST_CASE("csv round trip")
{
  DiagnosticsRecord a;
  a.t = 0.1;
  a.mass = -1.0 / 3.0;
  a.energy_total = 12.345678901234567;
  a.dissipation_residual = std::numeric_limits<double>::quiet_NaN();
  a.entropy_cross = 1e-300;
  a.u_max = 5e300;
  DiagnosticsRecord b = a;
  b.t = 0.2;
  b.separation_delta = std::nextafter(0.5, 1.0);

  std::stringstream ss;
  write_csv_header(ss);
  write_csv_row(ss, a);
  write_csv_row(ss, b);
  const auto back = read_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].mass == a.mass);
  CHECK(back[0].energy_total == a.energy_total);
  CHECK(std::isnan(back[0].dissipation_residual));
  CHECK(back[0].entropy_cross == a.entropy_cross);
  CHECK(back[0].u_max == a.u_max);
  CHECK(back[1].separation_delta == b.separation_delta);
  CHECK(csv_columns().size() == 16);
  CHECK(csv_columns().front() == "t");

  std::istringstream bad_header("t,mass\n");
  CHECK_THROWS_AS(read_csv(bad_header), std::runtime_error);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), std::runtime_error);
  std::stringstream short_row;
  write_csv_header(short_row);
  short_row << "1,2,3\n";
  CHECK_THROWS_AS(read_csv(short_row), std::runtime_error);
}

TEST_CASE("separation report")
{
  std::vector<DiagnosticsRecord> run;
  for (int k = 0; k <= 30; ++k) {
    DiagnosticsRecord r;
    r.t = 0.1 * k;
    r.separation_delta = r.t < 1.0 ? 0.01 : 0.1;
    run.push_back(r);
  }
  const auto rep = separation_report(run);
  CHECK(rep.inf_delta == doctest::Approx(0.1));
  CHECK(rep.samples == 21);
  CHECK(rep.bounded_away);
  CHECK(rep.guaranteed);

  const auto tr = separation_report(run, {}, Model::transport);
  CHECK_FALSE(tr.guaranteed);
  CHECK_FALSE(tr.note.empty());

  SeparationOptions late;
  late.sigma_cut = 10.0;
  const auto none = separation_report(run, late);
  CHECK(none.samples == 0);
  CHECK(std::isnan(none.inf_delta));
  CHECK_FALSE(none.bounded_away);

  SeparationOptions strict;
  strict.floor = 0.2;
  CHECK_FALSE(separation_report(run, strict).bounded_away);

  CHECK_THROWS_AS(separation_report({}), std::invalid_argument);
}

TEST_CASE("Trudinger-Moser probe")
{
  const Grid g(64, 64);
  const auto a = trudinger_moser_probe(g, 8, 3);
  const auto b = trudinger_moser_probe(g, 8, 3);
  REQUIRE(a.values.size() == 8);
  CHECK(a.values == b.values);
  for (double v : a.values) {
    CHECK(v >= area);
    CHECK(std::isfinite(v));
  }
  CHECK(a.max >= a.mean);
  CHECK_THROWS_AS(trudinger_moser_probe(g, 0, 3), std::invalid_argument);
}
