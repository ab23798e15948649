#include "phaseflow/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "phaseflow/convex_split.hpp"
#include "phaseflow/kernels.hpp"
#include "phaseflow/random_fields.hpp"

namespace phaseflow {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string to_string(Model m)
{
  switch (m) {
    case Model::transport: return "transport";
    case Model::nsac: return "nsac";
    case Model::nsac_matched: return "nsac_matched";
    case Model::euler_ac: return "euler_ac";
  }
  return "unknown";
}

std::optional<Model> parse_model(const std::string& s)
{
  for (Model m : {Model::transport, Model::nsac, Model::nsac_matched, Model::euler_ac})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------- energy

EnergyParts energy(const VectorField& u, const ScalarField& phi, const FluidParams& fluids,
                   const PotentialParams& potential, PotentialMode mode, bool include_potential)
{
  require_same_grid(u.grid(), phi.grid(), "energy");
  const double da = phi.grid().cell_area();
  const std::size_t n = phi.size();
  const auto ph = phi.values(), ux = u.x.values(), uy = u.y.values();
  const VectorField gp = gradient(phi);
  const auto gx = gp.x.values(), gy = gp.y.values();

  EnergyParts e;
  e.kinetic = 0.5 * da * kernels::reduce_sum(n, [&](std::size_t i) {
                return rho(ph[i], fluids) * (ux[i] * ux[i] + uy[i] * uy[i]);
              });
  e.gradient = 0.5 * fluids.sigma * da * kernels::reduce_sum(n, [&](std::size_t i) { return gx[i] * gx[i] + gy[i] * gy[i]; });
  if (include_potential)
    e.potential = fluids.sigma * da * kernels::reduce_sum(n, [&](std::size_t i) { return potential_value(ph[i], potential, mode); });
  e.total = e.kinetic + e.gradient + e.potential;
  return e;
}

EnergyParts energy(const SimState& s, Model model)
{
  return energy(s.u, s.phi, s.fluids, s.potential, s.mode, model != Model::transport);
}

EnergyParts energy(const EulerState& s)
{
  FluidParams unit;
  unit.rho1 = unit.rho2 = 1.0;
  unit.sigma = 1.0;
  return energy(velocity_from_vorticity(s.omega), s.phi, unit, s.potential, s.mode, true);
}

double viscous_dissipation(const VectorField& u, const ScalarField& phi, const FluidParams& fluids)
{
  const VectorField gx = gradient(u.x);
  const VectorField gy = gradient(u.y);
  const auto ph = phi.values();
  const auto ax = gx.x.values(), ay = gx.y.values(), bx = gy.x.values(), by = gy.y.values();
  const double s = kernels::reduce_sum(ph.size(), [&](std::size_t i) {
    const double off = 0.5 * (ay[i] + bx[i]);
    return 2.0 * nu(ph[i], fluids) * (ax[i] * ax[i] + by[i] * by[i] + 2.0 * off * off);
  });
  return s * phi.grid().cell_area();
}

namespace {

// || (phi_next - phi_prev)/dt + u . grad phi_prev ||_2^2
double material_rate_sq(const ScalarField& prev, const ScalarField& next, const VectorField& u, double dt)
{
  const ScalarField adv = advection(u, prev);
  const auto a = prev.values(), b = next.values(), c = adv.values();
  const double s = kernels::reduce_sum(a.size(), [&](std::size_t i) {
    const double r = (b[i] - a[i]) / dt + c[i];
    return r * r;
  });
  return s * prev.grid().cell_area();
}

}  // namespace

double dissipation_residual(const SimState& prev, const SimState& next, double dt, Model model)
{
  require_same_grid(prev.grid(), next.grid(), "dissipation_residual");
  if (!(dt > 0.0)) throw std::invalid_argument("dissipation_residual: dt must be positive");
  const double de = (energy(next, model).total - energy(prev, model).total) / dt;
  double r = de + viscous_dissipation(prev.u, prev.phi, prev.fluids);
  if (model != Model::transport) r += material_rate_sq(prev.phi, next.phi, prev.u, dt) / prev.fluids.gamma;
  return r;
}

double dissipation_residual(const EulerState& prev, const EulerState& next, double dt)
{
  require_same_grid(prev.grid(), next.grid(), "dissipation_residual");
  if (!(dt > 0.0)) throw std::invalid_argument("dissipation_residual: dt must be positive");
  const double de = (energy(next).total - energy(prev).total) / dt;
  return de + material_rate_sq(prev.phi, next.phi, velocity_from_vorticity(prev.omega), dt);
}

// ---------------------------------------------------------------- records

namespace {

void fill_common(DiagnosticsRecord& r, const VectorField& u, const ScalarField& phi, const PotentialParams& p,
                 const ScalarField& omega)
{
  const auto ph = phi.values();
  r.mass = mean(phi);
  r.phi_min = kernels::min_value(ph);
  r.phi_max = kernels::max_value(ph);
  const double amax = std::max(std::abs(r.phi_min), std::abs(r.phi_max));
  r.separation_delta = 1.0 - amax;
  if (amax < kSingularGuard) {
    const EntropyIntegrals e = entropy_integrals(phi, p);
    r.entropy_l1 = e.l1;
    r.entropy_sq_log = e.sq_log;
    r.entropy_cross = e.cross;
  } else {
    r.entropy_l1 = r.entropy_sq_log = r.entropy_cross = kNaN;
  }
  r.u_max = max_abs(u);
  r.grad_phi_max = max_abs(gradient(phi));
  const auto w = omega.values();
  r.enstrophy = 0.5 * kernels::dot(w, w) * phi.grid().cell_area();
}

void fill_energy(DiagnosticsRecord& r, const EnergyParts& e)
{
  r.energy_total = e.total;
  r.energy_kinetic = e.kinetic;
  r.energy_gradient = e.gradient;
  r.energy_potential = e.potential;
}

}  // namespace

DiagnosticsRecord make_record(const SimState& s, Model model, const SimState* prev, double dt)
{
  DiagnosticsRecord r;
  r.t = s.t;
  fill_energy(r, energy(s, model));
  r.dissipation_residual = prev != nullptr ? dissipation_residual(*prev, s, dt, model) : kNaN;
  fill_common(r, s.u, s.phi, s.potential, curl(s.u));
  return r;
}

DiagnosticsRecord make_record(const EulerState& s, const EulerState* prev, double dt)
{
  DiagnosticsRecord r;
  r.t = s.t;
  fill_energy(r, energy(s));
  r.dissipation_residual = prev != nullptr ? dissipation_residual(*prev, s, dt) : kNaN;
  fill_common(r, velocity_from_vorticity(s.omega), s.phi, s.potential, s.omega);
  return r;
}

// ---------------------------------------------------------------- csv

namespace {

struct Column {
  const char* name;
  double DiagnosticsRecord::*member;
};

constexpr Column kColumns[] = {
    {"t", &DiagnosticsRecord::t},
    {"mass", &DiagnosticsRecord::mass},
    {"energy_total", &DiagnosticsRecord::energy_total},
    {"energy_kinetic", &DiagnosticsRecord::energy_kinetic},
    {"energy_gradient", &DiagnosticsRecord::energy_gradient},
    {"energy_potential", &DiagnosticsRecord::energy_potential},
    {"dissipation_residual", &DiagnosticsRecord::dissipation_residual},
    {"entropy_l1", &DiagnosticsRecord::entropy_l1},
    {"entropy_sq_log", &DiagnosticsRecord::entropy_sq_log},
    {"entropy_cross", &DiagnosticsRecord::entropy_cross},
    {"separation_delta", &DiagnosticsRecord::separation_delta},
    {"phi_min", &DiagnosticsRecord::phi_min},
    {"phi_max", &DiagnosticsRecord::phi_max},
    {"u_max", &DiagnosticsRecord::u_max},
    {"grad_phi_max", &DiagnosticsRecord::grad_phi_max},
    {"enstrophy", &DiagnosticsRecord::enstrophy},
};

}  // namespace

const std::vector<std::string>& csv_columns()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : kColumns) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

void write_csv_header(std::ostream& os)
{
  bool first = true;
  for (const auto& c : kColumns) {
    os << (first ? "" : ",") << c.name;
    first = false;
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r)
{
  char buf[40];
  bool first = true;
  for (const auto& c : kColumns) {
    std::snprintf(buf, sizeof buf, "%.17g", r.*(c.member));
    os << (first ? "" : ",") << buf;
    first = false;
  }
  os << '\n';
}

std::vector<DiagnosticsRecord> read_csv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("diagnostics csv: missing header");
  std::ostringstream expected;
  write_csv_header(expected);
  if (line + "\n" != expected.str()) throw std::runtime_error("diagnostics csv: unexpected header '" + line + "'");
  std::vector<DiagnosticsRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    DiagnosticsRecord r;
    const char* p = line.c_str();
    std::size_t k = 0;
    for (const auto& c : kColumns) {
      char* end = nullptr;
      r.*(c.member) = std::strtod(p, &end);
      const bool last = ++k == std::size(kColumns);
      if (end == p || (last ? *end != '\0' : *end != ','))
        throw std::runtime_error("diagnostics csv: malformed row at line " + std::to_string(lineno));
      p = end + (last ? 0 : 1);
    }
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- separation

SeparationReport separation_report(const std::vector<DiagnosticsRecord>& run, const SeparationOptions& options,
                                   Model model)
{
  if (run.empty()) throw std::invalid_argument("separation_report: empty run");
  SeparationReport rep;
  rep.inf_delta = kNaN;
  for (const auto& r : run) {
    if (r.t < options.sigma_cut) continue;
    if (rep.samples == 0 || r.separation_delta < rep.inf_delta) {
      rep.inf_delta = r.separation_delta;
      rep.t_at_inf = r.t;
    }
    ++rep.samples;
  }
  rep.bounded_away = rep.samples > 0 && rep.inf_delta >= options.floor;
  if (model == Model::transport) {
    rep.guaranteed = false;
    rep.note = "no separation guarantee: the transport model has no relaxation mechanism";
  } else if (rep.samples == 0) {
    rep.note = "no records at or after the cut time";
  }
  return rep;
}

// ---------------------------------------------------------------- Trudinger-Moser

TrudingerMoserReport trudinger_moser_probe(const Grid& grid, int samples, std::uint64_t seed, int band)
{
  if (samples < 1) throw std::invalid_argument("trudinger_moser_probe: samples must be positive");
  TrudingerMoserReport rep;
  rep.values.resize(static_cast<std::size_t>(samples));
  const double da = grid.cell_area();
  for (int k = 0; k < samples; ++k) {
    ScalarField f = random_band_limited(grid, band, derive_seed(seed, static_cast<std::uint64_t>(k)));
    const VectorField g = gradient(f);
    const double gn = std::sqrt((kernels::dot(g.x.values(), g.x.values()) + kernels::dot(g.y.values(), g.y.values())) * da);
    f *= 1.0 / gn;
    const auto v = f.values();
    rep.values[static_cast<std::size_t>(k)] =
        da * kernels::reduce_sum(v.size(), [&](std::size_t i) { return std::exp(4.0 * std::numbers::pi * v[i] * v[i]); });
  }
  double s = 0.0;
  rep.max = 0.0;
  for (double x : rep.values) {
    rep.max = std::max(rep.max, x);
    s += x;
  }
  rep.mean = s / samples;
  return rep;
}

}  // namespace phaseflow
