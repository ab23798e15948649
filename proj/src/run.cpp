#include "phaseflow/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"
#include "phaseflow/lemma_lab.hpp"
#include "phaseflow/random_fields.hpp"
#include "phaseflow/transport.hpp"

namespace phaseflow {

std::string to_string(RunStatus s)
{
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::numerical_failure: return "numerical failure";
    case RunStatus::gradient_blow_up: return "gradient blow-up";
  }
  return "unknown";
}

namespace {

SnapshotField field_of(const std::string& name, const ScalarField& f)
{
  return SnapshotField{name, std::vector<double>(f.values().begin(), f.values().end())};
}

Snapshot header_of(const Grid& g, double t)
{
  Snapshot s;
  s.nx = g.nx();
  s.ny = g.ny();
  s.lx = g.lx();
  s.ly = g.ly();
  s.time = t;
  return s;
}

}  // namespace

Snapshot snapshot_of(const SimState& st)
{
  Snapshot s = header_of(st.grid(), st.t);
  s.fields = {field_of("ux", st.u.x), field_of("uy", st.u.y), field_of("phi", st.phi)};
  return s;
}

Snapshot snapshot_of(const EulerState& st)
{
  Snapshot s = header_of(st.grid(), st.t);
  s.fields = {field_of("omega", st.omega), field_of("phi", st.phi)};
  return s;
}

namespace {

long step_index(double t, double dt) { return std::lround(t / dt); }

void remove_mean(ScalarField& f) { kernels::shift(f.values(), -mean(f)); }

// Model-specific pieces of the time loop.
struct SimDriver {
  using State = SimState;
  Model model;
  NsacSchemeParams flow;
  transport::SchemeParams transport_scheme;

  State advance(const State& s, StepInfo& info) const
  {
    switch (model) {
      case Model::nsac: return step(s, flow, &info);
      case Model::nsac_matched: return step_matched(s, flow, &info);
      case Model::transport: return transport::step(s, transport_scheme, &info);
      case Model::euler_ac: break;
    }
    throw std::logic_error("SimDriver: unsupported model");
  }
  DiagnosticsRecord record(const State& s, const State* prev) const { return make_record(s, model, prev, flow.dt); }
  double energy_of(const State& s) const { return energy(s, model).total; }
};

struct EulerDriver {
  using State = EulerState;
  double dt;
  EulerSchemeParams scheme;

  State advance(const State& s, StepInfo& info) const { return step(s, dt, scheme, &info); }
  DiagnosticsRecord record(const State& s, const State* prev) const { return make_record(s, prev, dt); }
  double energy_of(const State& s) const { return energy(s).total; }
};

// Keeps header and rows up to and including `last_step`; returns false if
// there is no usable file.
bool truncate_csv(const std::filesystem::path& path, long last_step, double dt)
{
  std::ifstream is(path);
  if (!is) return false;
  std::string header;
  if (!std::getline(is, header)) return false;
  std::vector<std::string> keep{header};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const double t = std::strtod(line.c_str(), nullptr);
    if (step_index(t, dt) <= last_step) keep.push_back(line);
  }
  is.close();
  std::ofstream os(path, std::ios::trunc);
  for (const auto& l : keep) os << l << '\n';
  return static_cast<bool>(os);
}

double first_grad_phi_max(const std::filesystem::path& csv)
{
  std::ifstream is(csv);
  if (!is) return 0.0;
  try {
    const auto rows = read_csv(is);
    return rows.empty() ? 0.0 : rows.front().grad_phi_max;
  } catch (const std::exception&) {
    return 0.0;
  }
}

void write_summary(const std::filesystem::path& path, const RunConfig& c, const RunReport& r, long total_steps)
{
  std::ofstream os(path, std::ios::trunc);
  os << std::setprecision(17);
  os << "status: " << to_string(r.status) << '\n';
  os << "model: " << to_string(c.model) << '\n';
  os << "grid: " << c.grid.nx << "x" << c.grid.ny << '\n';
  os << "dt: " << c.scheme.dt << '\n';
  os << "steps: " << r.steps << '\n';
  os << "step_index: " << total_steps << '\n';
  os << "t_final: " << r.t_final << '\n';
  os << "mass_drift: " << r.mass_drift << '\n';
  os << "min_separation: " << r.min_separation << '\n';
  os << "max_energy_increase: " << r.max_energy_increase << '\n';
  os << "max_cfl: " << r.max_cfl << '\n';
  os << "max_newton_iterations: " << r.max_newton_iterations << '\n';
  const bool conserving = c.model != Model::transport;
  os << "verdict_mass: " << (!conserving ? "not enforced" : r.mass_drift <= 1e-12 ? "PASS" : "FAIL") << '\n';
  os << "verdict_bound: "
     << (c.mode != PotentialMode::singular || c.model == Model::transport ? "not enforced"
         : r.min_separation > 0.0                                        ? "PASS"
                                                                         : "FAIL")
     << '\n';
  os << "verdict_energy: " << (r.max_energy_increase <= 1e-10 ? "PASS" : "FAIL") << '\n';
  if (!r.failure.empty()) os << "failure: " << r.failure << '\n';
  if (!r.checkpoint.empty()) os << "checkpoint: " << r.checkpoint.string() << '\n';
}

template <class Driver>
RunReport time_loop(const RunConfig& c, const Driver& driver, typename Driver::State state, long step0, bool resumed,
                    const RunOptions& options)
{
  using State = typename Driver::State;
  const double dt = c.scheme.dt;
  const std::filesystem::path dir = c.output.out_dir;
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / "diagnostics.csv";

  RunReport rep;
  rep.out_dir = dir;
  bool have_csv = resumed && truncate_csv(csv_path, step0, dt);
  std::ofstream csv(csv_path, have_csv ? std::ios::app : std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  if (!have_csv) {
    write_csv_header(csv);
    write_csv_row(csv, driver.record(state, nullptr));
    csv.flush();
  }

  const long n_end = step_index(c.scheme.t_end, dt);
  const double mass0 = mean(state.phi);
  double e_prev = driver.energy_of(state);
  rep.min_separation = 1.0 - max_abs(state.phi);
  rep.t_final = state.t;
  long n = step0;
  try {
    while (n < n_end) {
      StepInfo info;
      State next = driver.advance(state, info);
      ++n;
      next.t = static_cast<double>(n) * dt;
      ++rep.steps;
      rep.max_cfl = std::max(rep.max_cfl, info.cfl);
      rep.max_newton_iterations = std::max(rep.max_newton_iterations, info.newton_iterations);
      rep.mass_drift = std::max(rep.mass_drift, std::abs(mean(next.phi) - mass0));
      rep.min_separation = std::min(rep.min_separation, 1.0 - max_abs(next.phi));
      const double e = driver.energy_of(next);
      rep.max_energy_increase = std::max(rep.max_energy_increase, (e - e_prev) / (1.0 + std::abs(e_prev)));
      e_prev = e;
      if (n % c.output.diag_every == 0) {
        write_csv_row(csv, driver.record(next, &state));
        csv.flush();
      }
      state = std::move(next);
      rep.t_final = state.t;
      if (c.output.snapshot_every > 0 && n % c.output.snapshot_every == 0) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%08ld.pfns", n);
        write_snapshot(dir / name, snapshot_of(state));
      }
      if (options.log != nullptr && info.cfl_warning)
        *options.log << "warning: CFL number " << info.cfl << " exceeds 1 at t = " << state.t << '\n';
    }
    write_snapshot(dir / "final.pfns", snapshot_of(state));
  } catch (const StepFailure& e) {
    rep.status = dynamic_cast<const GradientBlowUp*>(&e) != nullptr ? RunStatus::gradient_blow_up
                                                                   : RunStatus::numerical_failure;
    rep.exit_code = 3;
    rep.failure = e.what();
    rep.checkpoint = dir / "last_good.pfns";
    write_snapshot(rep.checkpoint, snapshot_of(state));
  } catch (const DomainError& e) {
    rep.status = RunStatus::numerical_failure;
    rep.exit_code = 3;
    rep.failure = e.what();
    rep.checkpoint = dir / "last_good.pfns";
    write_snapshot(rep.checkpoint, snapshot_of(state));
  }
  write_summary(dir / "summary.txt", c, rep, n);
  return rep;
}

}  // namespace

RunReport run(const RunConfig& c, const RunOptions& options)
{
  const Grid grid(c.grid.nx, c.grid.ny, c.grid.lx, c.grid.ly, c.grid.dealias_fraction);
  const double dt = c.scheme.dt;

  std::optional<Snapshot> snap;
  bool resumed = false;
  if (options.resume_from) {
    snap = read_snapshot(*options.resume_from);
    resumed = true;
  } else if (c.initial.kind == InitialKind::from_snapshot) {
    snap = read_snapshot(c.initial.path);
  }
  if (snap && (snap->nx != grid.nx() || snap->ny != grid.ny() || snap->lx != grid.lx() || snap->ly != grid.ly()))
    throw SnapshotError("snapshot grid does not match the configured grid");
  const double t0 = resumed ? snap->time : 0.0;
  const long step0 = resumed ? step_index(t0, dt) : 0;

  if (c.model == Model::euler_ac) {
    ScalarField phi = snap ? snap->scalar("phi", grid) : initial_phi(c, grid);
    ScalarField omega(grid);
    if (snap && snap->has_field("omega")) {
      omega = snap->scalar("omega", grid);
    } else if (snap && snap->has_field("ux")) {
      omega = curl(VectorField(snap->scalar("ux", grid), snap->scalar("uy", grid)));
    } else if (!snap) {
      omega = curl(initial_velocity(c, grid));
    }
    if (!resumed) remove_mean(omega);
    EulerDriver d{dt, EulerSchemeParams{c.scheme.newton_tol, c.scheme.newton_max_iter, true}};
    EulerState s(std::move(omega), std::move(phi), c.potential, c.mode, t0);
    return time_loop(c, d, std::move(s), step0, resumed, options);
  }

  ScalarField phi = snap ? snap->scalar("phi", grid) : initial_phi(c, grid);
  VectorField u(grid);
  if (snap && snap->has_field("ux")) {
    u = VectorField(snap->scalar("ux", grid), snap->scalar("uy", grid));
  } else if (snap && snap->has_field("omega")) {
    u = velocity_from_vorticity(snap->scalar("omega", grid));
  } else if (!snap) {
    u = initial_velocity(c, grid);
  }
  if (!resumed) {
    u = leray_project(u);
    if (c.model == Model::transport) phi = dealias(phi);
  }

  SimDriver d;
  d.model = c.model;
  d.flow.dt = dt;
  d.flow.newton_tol = c.scheme.newton_tol;
  d.flow.newton_max_iter = c.scheme.newton_max_iter;
  d.flow.nu_split = c.scheme.nu_split;
  d.flow.capillary = c.scheme.capillary;
  d.transport_scheme.flow = d.flow;
  if (c.model == Model::transport) {
    double g0 = resumed ? first_grad_phi_max(std::filesystem::path(c.output.out_dir) / "diagnostics.csv") : 0.0;
    if (!(g0 > 0.0)) g0 = transport::grad_max(phi);
    d.transport_scheme.grad_ceiling = c.scheme.grad_ceiling_factor * std::max(g0, 1e-300);
  }
  SimState s(std::move(u), std::move(phi), c.potential, c.fluids, c.mode, t0);
  return time_loop(c, d, std::move(s), step0, resumed, options);
}

// ---------------------------------------------------------------- report

bool report(const std::filesystem::path& dir, std::ostream& os)
{
  std::ifstream is(dir / "diagnostics.csv");
  if (!is) {
    os << "no diagnostics.csv in " << dir.string() << '\n';
    return false;
  }
  std::vector<DiagnosticsRecord> rows;
  try {
    rows = read_csv(is);
  } catch (const std::exception& e) {
    os << e.what() << '\n';
    return false;
  }
  if (rows.empty()) {
    os << "diagnostics.csv has no rows\n";
    return false;
  }
  std::string model_name = "nsac";
  {
    std::ifstream sum(dir / "summary.txt");
    std::string line;
    os << "summary:\n";
    while (std::getline(sum, line)) {
      os << "  " << line << '\n';
      if (line.rfind("model: ", 0) == 0) model_name = line.substr(7);
    }
  }
  const Model model = parse_model(model_name).value_or(Model::nsac);
  double drift = 0.0, max_inc = 0.0, max_res = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    drift = std::max(drift, std::abs(rows[k].mass - rows.front().mass));
    if (k > 0) {
      max_inc = std::max(max_inc, (rows[k].energy_total - rows[k - 1].energy_total) / (1.0 + std::abs(rows[k - 1].energy_total)));
      if (std::isfinite(rows[k].dissipation_residual)) max_res = std::max(max_res, std::abs(rows[k].dissipation_residual));
    }
  }
  os << std::setprecision(6);
  os << "rows: " << rows.size() << "  t: [" << rows.front().t << ", " << rows.back().t << "]\n";
  os << "mass drift over samples: " << drift << '\n';
  os << "largest sampled energy increase (relative): " << max_inc << '\n';
  os << "largest |dissipation residual|: " << max_res << '\n';
  os << "energy: " << rows.front().energy_total << " -> " << rows.back().energy_total << '\n';
  os << "grad_phi_max: " << rows.front().grad_phi_max << " -> " << rows.back().grad_phi_max << '\n';
  const SeparationReport sep = separation_report(rows, {}, model);
  os << "separation (t >= 1): ";
  if (sep.samples == 0) os << "no samples";
  else os << "inf delta = " << sep.inf_delta << " at t = " << sep.t_at_inf << (sep.bounded_away ? " (bounded away)" : " (below floor)");
  os << '\n';
  if (!sep.note.empty()) os << "note: " << sep.note << '\n';
  return true;
}

// ---------------------------------------------------------------- suites

namespace {

void line(std::ostream& os, bool pass, const std::string& name, const std::string& detail)
{
  os << (pass ? "PASS  " : "FAIL  ") << name << "  " << detail << '\n';
}

std::string fmt(double v)
{
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

}  // namespace

bool verify_lemma(const LemmaSuiteOptions& o, std::ostream& os)
{
  const Grid grid(o.n, o.n);
  bool all = true;
  EstimateOptions eo;
  eo.band = o.band;
  eo.c_cap = o.c_cap;
  double cmin = 0.0, cmax = 0.0;
  if (o.samples_csv != nullptr) *o.samples_csv << "p,seed,lhs,rhs_core,ratio\n" << std::setprecision(17);
  for (std::size_t k = 0; k < o.p.size(); ++k) {
    const EstimateReport r = verify_estimate(grid, o.samples, o.p[k], o.seed, eo);
    if (o.samples_csv != nullptr)
      for (const auto& s : r.samples)
        *o.samples_csv << s.p << ',' << s.seed << ',' << s.lhs << ',' << s.rhs_core << ',' << s.ratio << '\n';
    line(os, r.pass, "product estimate p=" + fmt(o.p[k]),
         "max_ratio=" + fmt(r.max_ratio) + " fitted_constant=" + fmt(r.fitted_constant) + " cap=" + fmt(o.c_cap));
    all = all && r.pass;
    cmin = k == 0 ? r.fitted_constant : std::min(cmin, r.fitted_constant);
    cmax = k == 0 ? r.fitted_constant : std::max(cmax, r.fitted_constant);
  }
  if (o.p.size() > 1) {
    const bool ok = cmin >= (1.0 - o.spread) * cmax;
    line(os, ok, "fitted constant across p", "min=" + fmt(cmin) + " max=" + fmt(cmax) + " min/max=" + fmt(cmin / cmax));
    all = all && ok;
  }
  const ScalarField f = random_band_limited(grid, o.band, o.seed);
  const DyadicDecomposition d = dyadic_decompose(f, 3);
  double parts = std::pow(l2_norm(d.tail), 2.0);
  for (const auto& s : d.shells) parts += std::pow(l2_norm(s), 2.0);
  const double total = std::pow(l2_norm(f), 2.0);
  const double err = std::abs(parts - total) / total;
  line(os, err <= 1e-12, "dyadic decomposition orthogonality", "relative_defect=" + fmt(err));
  return all && err <= 1e-12;
}

bool verify_potential_inequalities(const std::vector<double>& thetas, std::size_t points, std::ostream& os)
{
  bool all = true;
  for (double theta : thetas) {
    for (const auto& r : check_entropy_inequalities(theta, points)) {
      line(os, r.pass(), r.name + " theta=" + fmt(theta),
           "points=" + std::to_string(r.points) + " failures=" + std::to_string(r.failures) + " worst_margin=" +
               fmt(r.worst_margin) + " at s=" + fmt(r.worst_at));
      all = all && r.pass();
    }
  }
  return all;
}

bool verify_invariants(Model model, int steps, std::ostream& os)
{
  const Grid grid(64, 64);
  const double dt = 1e-3;
  RunConfig c;
  c.model = model;
  c.grid.nx = c.grid.ny = 64;
  c.initial.radius = 1.2;
  c.initial.width = 0.3;
  c.initial.velocity = VelocityKind::taylor_green;
  c.initial.velocity_amplitude = 0.5;
  const ScalarField phi0 = initial_phi(c, grid);
  const VectorField u0 = leray_project(initial_velocity(c, grid));
  const double m0 = mean(phi0);
  double drift = 0.0, min_delta = 1.0 - max_abs(phi0), max_inc = 0.0, max_div = 0.0;
  bool failed = false;
  std::string failure;
  try {
    if (model == Model::euler_ac) {
      EulerState s(curl(u0), phi0);
      remove_mean(s.omega);
      double e = energy(s).total;
      for (int k = 0; k < steps; ++k) {
        s = step(s, dt);
        const double en = energy(s).total;
        max_inc = std::max(max_inc, (en - e) / (1.0 + std::abs(e)));
        e = en;
        drift = std::max(drift, std::abs(mean(s.phi) - m0));
        min_delta = std::min(min_delta, 1.0 - max_abs(s.phi));
      }
    } else {
      SimState s(u0, model == Model::transport ? dealias(phi0) : phi0);
      NsacSchemeParams sc;
      sc.dt = dt;
      transport::SchemeParams ts;
      ts.flow = sc;
      double e = energy(s, model).total;
      for (int k = 0; k < steps; ++k) {
        s = model == Model::nsac           ? step(s, sc)
            : model == Model::nsac_matched ? step_matched(s, sc)
                                           : transport::step(s, ts);
        const double en = energy(s, model).total;
        max_inc = std::max(max_inc, (en - e) / (1.0 + std::abs(e)));
        e = en;
        drift = std::max(drift, std::abs(mean(s.phi) - m0));
        min_delta = std::min(min_delta, 1.0 - max_abs(s.phi));
        max_div = std::max(max_div, max_abs(divergence(s.u)));
      }
    }
  } catch (const std::exception& e) {
    failed = true;
    failure = e.what();
  }
  const std::string tag = " model=" + to_string(model) + " steps=" + std::to_string(steps);
  if (failed) {
    line(os, false, "run" + tag, failure);
    return false;
  }
  const bool mass_ok = drift <= 1e-12;
  const bool bound_ok = model == Model::transport || min_delta > 0.0;
  const bool energy_ok = max_inc <= 1e-10;
  const bool div_ok = max_div <= 1e-12;
  line(os, mass_ok, "mass conservation" + tag, "max_drift=" + fmt(drift));
  line(os, bound_ok, "pointwise bound" + tag, "min(1-max|phi|)=" + fmt(min_delta));
  line(os, energy_ok, "energy non-increasing" + tag, "max_relative_increase=" + fmt(max_inc));
  if (model != Model::euler_ac) line(os, div_ok, "divergence-free velocity" + tag, "max|div u|=" + fmt(max_div));
  return mass_ok && bound_ok && energy_ok && (model == Model::euler_ac || div_ok);
}

}  // namespace phaseflow
