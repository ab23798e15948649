#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "phaseflow/run.hpp"
#include "support.hpp"

using namespace phaseflow;

namespace {

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

RunConfig base(const std::string& extra, const std::filesystem::path& out)
{
  RunConfig c = parse_config_text("model = nsac\ngrid.nx = 32\ngrid.ny = 32\nscheme.t_end = 0.05\n"
                                  "initial.radius = 1.2\ninitial.width = 0.3\ninitial.velocity = taylor_green\n"
                                  "initial.velocity_amplitude = 0.5\noutput.diag_every = 5\n" +
                                  extra);
  c.output.out_dir = out.string();
  return c;
}

}  // namespace

TEST_CASE("nsac bubble run: outputs, mass and summary")
{
  const auto dir = testing::scratch_dir("run_nsac");
  RunConfig c = base("", dir / "a");
  c.grid.nx = c.grid.ny = 64;
  c.scheme.t_end = 0.1;
  const RunReport r = run(c);
  CHECK(r.status == RunStatus::ok);
  CHECK(r.exit_code == 0);
  CHECK(r.steps == 100);
  CHECK(r.t_final == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(r.mass_drift <= 1e-12);
  CHECK(r.max_energy_increase <= 1e-10);
  CHECK(r.min_separation > 0.0);
  CHECK(std::filesystem::exists(dir / "a" / "final.pfns"));

  std::ifstream csv(dir / "a" / "diagnostics.csv");
  const auto rows = read_csv(csv);
  REQUIRE(rows.size() == 21);
  CHECK(rows.front().t == 0.0);
  CHECK(rows.back().t == doctest::Approx(0.1));
  CHECK(std::isnan(rows.front().dissipation_residual));
  CHECK(std::isfinite(rows.back().dissipation_residual));

  const std::string summary = slurp(dir / "a" / "summary.txt");
  CHECK(summary.find("status: ok") != std::string::npos);
  CHECK(summary.find("verdict_mass: PASS") != std::string::npos);

  const Snapshot s = read_snapshot(dir / "a" / "final.pfns");
  CHECK(s.has_field("ux"));
  CHECK(s.has_field("phi"));
  CHECK(s.time == doctest::Approx(0.1));

  std::ostringstream os;
  CHECK(report(dir / "a", os));
  CHECK(os.str().find("mass") != std::string::npos);
  CHECK_FALSE(report(dir / "missing", os));
}

TEST_CASE("identical configs give identical bytes")
{
  const auto dir = testing::scratch_dir("run_determinism");
  run(base("", dir / "a"));
  run(base("", dir / "b"));
  CHECK(slurp(dir / "a" / "diagnostics.csv") == slurp(dir / "b" / "diagnostics.csv"));
  CHECK(slurp(dir / "a" / "final.pfns") == slurp(dir / "b" / "final.pfns"));
}

TEST_CASE("resume reproduces the uninterrupted run")
{
  for (const char* model : {"nsac", "transport", "euler_ac"}) {
    CAPTURE(model);
    const auto dir = testing::scratch_dir(std::string("run_resume_") + model);
    const std::string extra = std::string("output.snapshot_every = 20\n");
    RunConfig full = base(extra, dir / "full");
    full.model = *parse_model(model);
    run(full);

    RunConfig part = full;
    part.output.out_dir = (dir / "part").string();
    part.scheme.t_end = 0.03;
    run(part);
    REQUIRE(std::filesystem::exists(dir / "part" / "snap_00000020.pfns"));

    RunConfig rest = full;
    rest.output.out_dir = (dir / "part").string();
    RunOptions opt;
    opt.resume_from = dir / "part" / "snap_00000020.pfns";
    const RunReport r = run(rest, opt);
    CHECK(r.exit_code == 0);
    CHECK(r.steps == 30);
    CHECK(slurp(dir / "part" / "diagnostics.csv") == slurp(dir / "full" / "diagnostics.csv"));
    CHECK(slurp(dir / "part" / "final.pfns") == slurp(dir / "full" / "final.pfns"));
  }
}

TEST_CASE("resume rejects a snapshot on another grid")
{
  const auto dir = testing::scratch_dir("run_resume_grid");
  run(base("output.snapshot_every = 10\n", dir / "a"));
  RunConfig other = base("", dir / "a");
  other.grid.nx = other.grid.ny = 16;
  RunOptions opt;
  opt.resume_from = dir / "a" / "snap_00000010.pfns";
  CHECK_THROWS(run(other, opt));
}

TEST_CASE("euler run stores vorticity")
{
  const auto dir = testing::scratch_dir("run_euler");
  RunConfig c = base("", dir / "a");
  c.model = Model::euler_ac;
  const RunReport r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.mass_drift <= 1e-12);
  const Snapshot s = read_snapshot(dir / "a" / "final.pfns");
  CHECK(s.has_field("omega"));
  CHECK_FALSE(s.has_field("ux"));
}

TEST_CASE("failures are reported with a checkpoint")
{
  const auto dir = testing::scratch_dir("run_failure");
  SUBCASE("transport gradient blow-up")
  {
    RunConfig c = base("", dir / "blow");
    c.model = Model::transport;
    c.initial.velocity_amplitude = 3.0;
    c.scheme.grad_ceiling_factor = 1.05;
    c.scheme.t_end = 1.0;
    const RunReport r = run(c);
    CHECK(r.status == RunStatus::gradient_blow_up);
    CHECK(r.exit_code == 3);
    CHECK(r.steps < 1000);
    CHECK(r.checkpoint.filename() == "last_good.pfns");
    const Snapshot s = read_snapshot(r.checkpoint);
    CHECK(s.time == doctest::Approx(r.t_final));
    CHECK(slurp(dir / "blow" / "summary.txt").find("status: gradient blow-up") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "blow" / "final.pfns"));
  }
  SUBCASE("Newton failure")
  {
    RunConfig c = base("", dir / "newton");
    c.scheme.newton_max_iter = 1;
    c.scheme.newton_tol = 1e-300;
    const RunReport r = run(c);
    CHECK(r.status == RunStatus::numerical_failure);
    CHECK(r.exit_code == 3);
    CHECK(r.steps == 0);
    CHECK(std::filesystem::exists(dir / "newton" / "last_good.pfns"));
    CHECK_FALSE(r.failure.empty());
  }
}

TEST_CASE("invariant suites on short runs")
{
  std::ostringstream os;
  CHECK(verify_invariants(Model::nsac, 20, os));
  CHECK(verify_invariants(Model::nsac_matched, 20, os));
  CHECK(verify_invariants(Model::transport, 20, os));
  CHECK(verify_invariants(Model::euler_ac, 20, os));
  CHECK(os.str().find("FAIL") == std::string::npos);
  CHECK(os.str().find("PASS") != std::string::npos);
}
