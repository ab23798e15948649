#include <doctest.h>

#include <fstream>

#include "phaseflow/config.hpp"
#include "phaseflow/snapshot.hpp"
#include "support.hpp"

using namespace phaseflow;

namespace {

std::vector<std::string> problems_of(const std::string& text)
{
  try {
    parse_config_text(text, "cfg");
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle)
{
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("minimal config takes the defaults")
{
  const RunConfig c = parse_config_text("model = nsac\ngrid.nx = 64\ngrid.ny = 32\n");
  CHECK(c.model == Model::nsac);
  CHECK(c.grid.nx == 64);
  CHECK(c.grid.ny == 32);
  CHECK(c.potential.theta == 1.0);
  CHECK(c.potential.theta0 == 2.0);
  CHECK(c.potential.epsilon == 0.01);
  CHECK(c.fluids.sigma == 1.0);
  CHECK(c.fluids.gamma == 1.0);
  CHECK(c.scheme.dt == 1e-3);
  CHECK(c.mode == PotentialMode::singular);
  CHECK(c.initial.kind == InitialKind::bubble);
  CHECK(c.output.diag_every == 10);
}

TEST_CASE("full config with comments, strings and booleans")
{
  const RunConfig c = parse_config_text(R"(# random start
model = euler_ac   # inviscid
grid.nx = 32
grid.ny = 32
potential.theta = 0.8
potential.theta0 = 1.5
potential.mode = regularized
scheme.capillary = false
scheme.t_end = 2.5e-1
initial.type = random
initial.seed = 12345678901234
initial.band = 5
initial.velocity = taylor_green
output.out_dir = "runs/with space"
)");
  CHECK(c.model == Model::euler_ac);
  CHECK(c.potential.theta0 == 1.5);
  CHECK(c.mode == PotentialMode::regularized);
  CHECK_FALSE(c.scheme.capillary);
  CHECK(c.scheme.t_end == 0.25);
  CHECK(c.initial.kind == InitialKind::random);
  CHECK(c.initial.seed == 12345678901234ULL);
  CHECK(c.initial.velocity == VelocityKind::taylor_green);
  CHECK(c.output.out_dir == "runs/with space");
}

TEST_CASE("parameter invariants")
{
  CHECK(mentions(problems_of("model = nsac\ngrid.nx = 32\ngrid.ny = 32\npotential.theta = 2\npotential.theta0 = 2\n"),
                 "theta"));
  CHECK(problems_of("model = nsac\ngrid.nx = 30\ngrid.ny = 32\n").empty());
  CHECK_FALSE(problems_of("model = nsac\ngrid.nx = 31\ngrid.ny = 32\n").empty());
  CHECK_FALSE(problems_of("model = nsac\ngrid.nx = 32\ngrid.ny = 32\nfluids.nu1 = 0\n").empty());
  CHECK(problems_of("model = euler_ac\ngrid.nx = 32\ngrid.ny = 32\nfluids.nu1 = 0\nfluids.nu2 = 0\n").empty());
  CHECK(mentions(problems_of("model = nsac_matched\ngrid.nx = 32\ngrid.ny = 32\nfluids.rho2 = 3\n"), "nsac_matched"));
}

TEST_CASE("initial condition checks")
{
  const std::string head = "model = nsac\ngrid.nx = 64\ngrid.ny = 64\n";
  CHECK(problems_of(head + "initial.inside = 0.95\ninitial.outside = -0.95\ninitial.width = 0.1\n").empty());
  CHECK(mentions(problems_of(head + "initial.inside = 1.1\n"), "max|phi|"));
  CHECK(problems_of(head + "initial.inside = 1.1\npotential.mode = regularized\n").empty());
  CHECK(mentions(problems_of(head + "initial.type = random\ninitial.mean = 1.2\ninitial.amplitude = 0.1\npotential.mode = regularized\n"),
                 "mean"));
  CHECK(mentions(problems_of(head + "initial.type = random\ninitial.band = 40\n"), "initial.band"));
  CHECK(mentions(problems_of(head + "initial.type = from_snapshot\n"), "initial.path"));

  const RunConfig c = parse_config_text(head + "initial.radius = 1.2\ninitial.width = 0.3\n");
  const Grid g(64, 64);
  const ScalarField phi = initial_phi(c, g);
  CHECK(max_abs(phi) < 0.95);
  CHECK(phi(32, 32) > 0.9);
  CHECK(phi(0, 0) < -0.9);
  CHECK(max_abs(initial_velocity(c, g)) == 0.0);
}

TEST_CASE("initial velocity")
{
  const std::string head = "model = nsac\ngrid.nx = 32\ngrid.ny = 32\n";
  const Grid g(32, 32);
  const RunConfig tg = parse_config_text(head + "initial.velocity = taylor_green\ninitial.velocity_amplitude = 0.5\n");
  const VectorField u = initial_velocity(tg, g);
  CHECK(max_abs(divergence(u)) < 1e-13);
  CHECK(max_abs(u) == doctest::Approx(0.5));
  const RunConfig rnd = parse_config_text(head + "initial.velocity = random\ninitial.velocity_amplitude = 2\n");
  const VectorField ur = initial_velocity(rnd, g);
  CHECK(max_abs(divergence(ur)) < 1e-12);
  CHECK(max_abs(ur) == doctest::Approx(2.0));
}

TEST_CASE("syntax errors carry line and column")
{
  SUBCASE("duplicate key")
  {
    const auto p = problems_of("model = nsac\ngrid.nx = 32\ngrid.ny = 32\n  grid.nx = 64\n");
    REQUIRE(p.size() == 1);
    CHECK(p[0] == "cfg:4:3: duplicate key 'grid.nx'");
  }
  SUBCASE("unknown key")
  {
    const auto p = problems_of("model = nsac\ngrid.nx = 32\ngrid.ny = 32\nfluids.rho = 2\n");
    REQUIRE(p.size() == 1);
    CHECK(p[0] == "cfg:4:1: unknown key 'fluids.rho'");
  }
  SUBCASE("bad values and trailing text")
  {
    const auto p = problems_of("model = nsac\ngrid.nx = 3x2\ngrid.ny = 32\nscheme.capillary = yes\nscheme.dt = 1e-3 2\n");
    REQUIRE(p.size() == 3);
    CHECK(p[0].rfind("cfg:2:11: grid.nx: expected an integer", 0) == 0);
    CHECK(p[1].rfind("cfg:4:20: scheme.capillary", 0) == 0);
    CHECK(p[2] == "cfg:5:18: unexpected text after value");
  }
  SUBCASE("structure")
  {
    const auto p = problems_of("model nsac\n= 3\ngrid.nx =\noutput.out_dir = \"open\n");
    REQUIRE(p.size() >= 4);
    CHECK(p[0] == "cfg:1:7: expected '=' after key 'model'");
    CHECK(p[1] == "cfg:2:1: expected a key");
    CHECK(p[2] == "cfg:3:10: missing value for 'grid.nx'");
    CHECK(p[3] == "cfg:4:18: unterminated string");
  }
  SUBCASE("every problem is collected")
  {
    const auto p = problems_of("model = fluid\nfoo = 1\nbar = 2\n");
    CHECK(p.size() == 5);  // bad model, two unknown keys, missing grid.nx and grid.ny
    CHECK(mentions(p, "unknown model 'fluid'"));
    CHECK(mentions(p, "missing required key 'grid.ny'"));
  }
  SUBCASE("validation problems are collected as well")
  {
    const auto p = problems_of("model = nsac\ngrid.nx = 32\ngrid.ny = 32\nscheme.dt = -1\noutput.diag_every = 0\nfluids.sigma = 0\n");
    CHECK(p.size() == 3);
  }
}

TEST_CASE("config files")
{
  const auto dir = testing::scratch_dir("config_files");
  {
    std::ofstream out(dir / "ok.cfg");
    out << "model = transport\ngrid.nx = 16\ngrid.ny = 16\n";
  }
  CHECK(parse_config(dir / "ok.cfg").model == Model::transport);
  CHECK_THROWS_AS(parse_config(dir / "absent.cfg"), ConfigError);
  {
    std::ofstream out(dir / "bad.cfg");
    out << "model = transport\ngrid.nx = 16\n";
  }
  try {
    parse_config(dir / "bad.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e.problems(), "bad.cfg"));
  }

  Snapshot s;
  s.nx = s.ny = 16;
  s.lx = s.ly = 1.0;
  write_snapshot(dir / "init.pfns", s);
  const std::string text = "model = nsac\ngrid.nx = 16\ngrid.ny = 16\ninitial.type = from_snapshot\ninitial.path = \"" +
                           (dir / "init.pfns").string() + "\"\n";
  CHECK(parse_config_text(text).initial.path == (dir / "init.pfns").string());
}
