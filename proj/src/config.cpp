#include "phaseflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "phaseflow/kernels.hpp"
#include "phaseflow/random_fields.hpp"

namespace phaseflow {

namespace {

std::string join(const std::vector<std::string>& v)
{
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "\n") + s;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems))
{
}

// ---------------------------------------------------------------- initial data

ScalarField initial_phi(const RunConfig& c, const Grid& grid)
{
  const InitialConfig& ic = c.initial;
  switch (ic.kind) {
    case InitialKind::bubble: {
      const double cx = ic.center_x < 0.0 ? 0.5 * grid.lx() : ic.center_x;
      const double cy = ic.center_y < 0.0 ? 0.5 * grid.ly() : ic.center_y;
      const double mid = 0.5 * (ic.inside + ic.outside), half = 0.5 * (ic.inside - ic.outside);
      const double lx = grid.lx(), ly = grid.ly();
      return ScalarField::from_function(grid, [=](double x, double y) {
        const double d = std::hypot(std::remainder(x - cx, lx), std::remainder(y - cy, ly));
        return mid + half * std::tanh((ic.radius - d) / ic.width);
      });
    }
    case InitialKind::random: {
      ScalarField f = random_band_limited(grid, ic.band, ic.seed);
      const double m = max_abs(f);
      f *= ic.amplitude / m;
      kernels::shift(f.values(), ic.mean);
      return f;
    }
    case InitialKind::from_snapshot: break;
  }
  throw std::logic_error("initial_phi: snapshot initial data is loaded by run()");
}

VectorField initial_velocity(const RunConfig& c, const Grid& grid)
{
  const InitialConfig& ic = c.initial;
  switch (ic.velocity) {
    case VelocityKind::zero: return VectorField(grid);
    case VelocityKind::taylor_green: {
      const double a = ic.velocity_amplitude;
      const double kx = 2.0 * std::numbers::pi / grid.lx(), ky = 2.0 * std::numbers::pi / grid.ly();
      // streamfunction (a / ky) sin(kx x) sin(ky y), u = (d_y psi, -d_x psi)
      return VectorField(ScalarField::from_function(grid, [=](double x, double y) { return a * std::sin(kx * x) * std::cos(ky * y); }),
                         ScalarField::from_function(grid, [=](double x, double y) {
                           return -a * (kx / ky) * std::cos(kx * x) * std::sin(ky * y);
                         }));
    }
    case VelocityKind::random: {
      const ScalarField psi = random_band_limited(grid, ic.velocity_band, ic.velocity_seed);
      const VectorField g = gradient(psi);
      VectorField u(g.y, -1.0 * g.x);
      const double m = max_abs(u);
      u.x *= ic.velocity_amplitude / m;
      u.y *= ic.velocity_amplitude / m;
      return u;
    }
  }
  return VectorField(grid);
}

// ---------------------------------------------------------------- validation

std::vector<std::string> RunConfig::violations() const
{
  std::vector<std::string> out;
  auto add = [&out](const std::vector<std::string>& v) { out.insert(out.end(), v.begin(), v.end()); };

  bool grid_ok = true;
  if (grid.nx < 8 || grid.ny < 8 || grid.nx % 2 != 0 || grid.ny % 2 != 0) {
    out.push_back("grid.nx and grid.ny must be even and at least 8");
    grid_ok = false;
  }
  if (!(grid.lx > 0.0) || !(grid.ly > 0.0)) {
    out.push_back("grid.lx and grid.ly must be positive");
    grid_ok = false;
  }
  if (!(grid.dealias_fraction > 0.0 && grid.dealias_fraction <= 1.0)) {
    out.push_back("grid.dealias_fraction must lie in (0, 1]");
    grid_ok = false;
  }

  add(potential.violations());
  const bool viscous = model != Model::euler_ac;
  if (model != Model::euler_ac) add(fluids.violations(viscous));
  if (model == Model::nsac_matched && !(fluids.rho1 == 1.0 && fluids.rho2 == 1.0))
    out.push_back("nsac_matched solves the unit-density system: set fluids.rho1 = fluids.rho2 = 1");

  if (!(scheme.dt > 0.0)) out.push_back("scheme.dt must be positive");
  if (!(scheme.t_end > 0.0)) out.push_back("scheme.t_end must be positive");
  if (!(scheme.newton_tol > 0.0)) out.push_back("scheme.newton_tol must be positive");
  if (scheme.newton_max_iter < 1) out.push_back("scheme.newton_max_iter must be at least 1");
  if (scheme.nu_split >= 0.0 && scheme.nu_split < 0.5 * std::max(fluids.nu1, fluids.nu2))
    out.push_back("scheme.nu_split must be at least max(nu1, nu2)/2");
  if (!(scheme.grad_ceiling_factor > 1.0)) out.push_back("scheme.grad_ceiling_factor must exceed 1");

  if (output.diag_every < 1) out.push_back("output.diag_every must be at least 1");
  if (output.snapshot_every < 0) out.push_back("output.snapshot_every must be non-negative");
  if (output.out_dir.empty()) out.push_back("output.out_dir must not be empty");

  const int max_band = std::min(grid.nx, grid.ny) / 2 - 1;
  if (initial.velocity == VelocityKind::random && (initial.velocity_band < 1 || initial.velocity_band > max_band))
    out.push_back("initial.velocity_band must lie in [1, min(nx, ny)/2 - 1]");
  if (initial.velocity != VelocityKind::zero && !(initial.velocity_amplitude >= 0.0))
    out.push_back("initial.velocity_amplitude must be non-negative");

  switch (initial.kind) {
    case InitialKind::bubble:
      if (!(initial.radius > 0.0)) out.push_back("initial.radius must be positive");
      if (!(initial.width > 0.0)) out.push_back("initial.width must be positive");
      break;
    case InitialKind::random:
      if (initial.band < 1 || initial.band > max_band) out.push_back("initial.band must lie in [1, min(nx, ny)/2 - 1]");
      if (!(initial.amplitude >= 0.0)) out.push_back("initial.amplitude must be non-negative");
      break;
    case InitialKind::from_snapshot:
      if (initial.path.empty()) out.push_back("initial.path is required for from_snapshot");
      else if (!std::filesystem::exists(initial.path)) out.push_back("initial.path does not exist: " + initial.path);
      break;
  }

  if (initial.kind != InitialKind::from_snapshot && grid_ok) {
    try {
      const Grid g(grid.nx, grid.ny, grid.lx, grid.ly, grid.dealias_fraction);
      const ScalarField phi = initial_phi(*this, g);
      const double m = mean(phi);
      if (!(std::abs(m) < 1.0)) out.push_back("initial condition: |mean(phi)| must be below 1");
      if (mode == PotentialMode::singular && !(max_abs(phi) < 1.0))
        out.push_back("initial condition: max|phi| must be below 1 in singular mode");
    } catch (const std::exception& e) {
      out.push_back(std::string("initial condition: ") + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  std::string text;
  bool quoted = false;
};

using Setter = std::function<std::string(RunConfig&, const Token&)>;

std::string parse_double(const Token& t, double& out)
{
  if (t.quoted) return "expected a number";
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e || !std::isfinite(out)) return "expected a number, got '" + t.text + "'";
  return {};
}

template <class Int>
std::string parse_int(const Token& t, Int& out)
{
  if (t.quoted) return "expected an integer";
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e) return "expected an integer, got '" + t.text + "'";
  return {};
}

std::string parse_bool(const Token& t, bool& out)
{
  if (!t.quoted && t.text == "true") return out = true, std::string{};
  if (!t.quoted && t.text == "false") return out = false, std::string{};
  return "expected true or false, got '" + t.text + "'";
}

template <class G, class M>
Setter field(G RunConfig::*group, M G::*member)
{
  return [group, member](RunConfig& c, const Token& t) -> std::string {
    M& target = (c.*group).*member;
    if constexpr (std::is_same_v<M, double>) return parse_double(t, target);
    else if constexpr (std::is_same_v<M, bool>) return parse_bool(t, target);
    else if constexpr (std::is_same_v<M, std::string>) return target = t.text, std::string{};
    else return parse_int(t, target);
  };
}

const std::map<std::string, Setter>& setters()
{
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    m["model"] = [](RunConfig& c, const Token& t) -> std::string {
      const auto model = parse_model(t.text);
      if (!model) return "unknown model '" + t.text + "' (expected transport, nsac, nsac_matched or euler_ac)";
      c.model = *model;
      return {};
    };
    m["grid.nx"] = field(&RunConfig::grid, &GridConfig::nx);
    m["grid.ny"] = field(&RunConfig::grid, &GridConfig::ny);
    m["grid.lx"] = field(&RunConfig::grid, &GridConfig::lx);
    m["grid.ly"] = field(&RunConfig::grid, &GridConfig::ly);
    m["grid.dealias_fraction"] = field(&RunConfig::grid, &GridConfig::dealias_fraction);
    m["potential.theta"] = field(&RunConfig::potential, &PotentialParams::theta);
    m["potential.theta0"] = field(&RunConfig::potential, &PotentialParams::theta0);
    m["potential.epsilon"] = field(&RunConfig::potential, &PotentialParams::epsilon);
    m["potential.mode"] = [](RunConfig& c, const Token& t) -> std::string {
      if (t.text == "singular") c.mode = PotentialMode::singular;
      else if (t.text == "regularized") c.mode = PotentialMode::regularized;
      else return "expected singular or regularized, got '" + t.text + "'";
      return {};
    };
    m["fluids.rho1"] = field(&RunConfig::fluids, &FluidParams::rho1);
    m["fluids.rho2"] = field(&RunConfig::fluids, &FluidParams::rho2);
    m["fluids.nu1"] = field(&RunConfig::fluids, &FluidParams::nu1);
    m["fluids.nu2"] = field(&RunConfig::fluids, &FluidParams::nu2);
    m["fluids.sigma"] = field(&RunConfig::fluids, &FluidParams::sigma);
    m["fluids.gamma"] = field(&RunConfig::fluids, &FluidParams::gamma);
    m["scheme.dt"] = field(&RunConfig::scheme, &SchemeConfig::dt);
    m["scheme.t_end"] = field(&RunConfig::scheme, &SchemeConfig::t_end);
    m["scheme.newton_tol"] = field(&RunConfig::scheme, &SchemeConfig::newton_tol);
    m["scheme.newton_max_iter"] = field(&RunConfig::scheme, &SchemeConfig::newton_max_iter);
    m["scheme.nu_split"] = field(&RunConfig::scheme, &SchemeConfig::nu_split);
    m["scheme.capillary"] = field(&RunConfig::scheme, &SchemeConfig::capillary);
    m["scheme.grad_ceiling_factor"] = field(&RunConfig::scheme, &SchemeConfig::grad_ceiling_factor);
    m["initial.type"] = [](RunConfig& c, const Token& t) -> std::string {
      if (t.text == "bubble") c.initial.kind = InitialKind::bubble;
      else if (t.text == "random") c.initial.kind = InitialKind::random;
      else if (t.text == "from_snapshot") c.initial.kind = InitialKind::from_snapshot;
      else return "expected bubble, random or from_snapshot, got '" + t.text + "'";
      return {};
    };
    m["initial.center_x"] = field(&RunConfig::initial, &InitialConfig::center_x);
    m["initial.center_y"] = field(&RunConfig::initial, &InitialConfig::center_y);
    m["initial.radius"] = field(&RunConfig::initial, &InitialConfig::radius);
    m["initial.width"] = field(&RunConfig::initial, &InitialConfig::width);
    m["initial.inside"] = field(&RunConfig::initial, &InitialConfig::inside);
    m["initial.outside"] = field(&RunConfig::initial, &InitialConfig::outside);
    m["initial.mean"] = field(&RunConfig::initial, &InitialConfig::mean);
    m["initial.amplitude"] = field(&RunConfig::initial, &InitialConfig::amplitude);
    m["initial.seed"] = field(&RunConfig::initial, &InitialConfig::seed);
    m["initial.band"] = field(&RunConfig::initial, &InitialConfig::band);
    m["initial.path"] = field(&RunConfig::initial, &InitialConfig::path);
    m["initial.velocity"] = [](RunConfig& c, const Token& t) -> std::string {
      if (t.text == "zero") c.initial.velocity = VelocityKind::zero;
      else if (t.text == "taylor_green") c.initial.velocity = VelocityKind::taylor_green;
      else if (t.text == "random") c.initial.velocity = VelocityKind::random;
      else return "expected zero, taylor_green or random, got '" + t.text + "'";
      return {};
    };
    m["initial.velocity_amplitude"] = field(&RunConfig::initial, &InitialConfig::velocity_amplitude);
    m["initial.velocity_seed"] = field(&RunConfig::initial, &InitialConfig::velocity_seed);
    m["initial.velocity_band"] = field(&RunConfig::initial, &InitialConfig::velocity_band);
    m["output.diag_every"] = field(&RunConfig::output, &OutputConfig::diag_every);
    m["output.snapshot_every"] = field(&RunConfig::output, &OutputConfig::snapshot_every);
    m["output.out_dir"] = field(&RunConfig::output, &OutputConfig::out_dir);
    return m;
  }();
  return table;
}

bool key_char(char c, bool first)
{
  const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  return first ? alpha : alpha || (c >= '0' && c <= '9') || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source)
{
  RunConfig cfg;
  std::vector<std::string> problems;
  std::set<std::string> seen;
  auto report = [&](std::size_t line, std::size_t col, const std::string& msg) {
    problems.push_back(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  };

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = 0;
    const std::size_t n = line.size();
    auto skip = [&] { while (i < n && is_space(line[i])) ++i; };
    skip();
    if (i == n || line[i] == '#') continue;

    const std::size_t key_col = i + 1;
    if (!key_char(line[i], true)) {
      report(lineno, i + 1, "expected a key");
      continue;
    }
    const std::size_t kb = i;
    while (i < n && key_char(line[i], false)) ++i;
    const std::string key = line.substr(kb, i - kb);
    skip();
    if (i == n || line[i] != '=') {
      report(lineno, i + 1, "expected '=' after key '" + key + "'");
      continue;
    }
    ++i;
    skip();
    const std::size_t value_col = i + 1;
    Token tok;
    if (i < n && line[i] == '"') {
      const std::size_t close = line.find('"', i + 1);
      if (close == std::string::npos) {
        report(lineno, i + 1, "unterminated string");
        continue;
      }
      tok.text = line.substr(i + 1, close - i - 1);
      tok.quoted = true;
      i = close + 1;
    } else {
      const std::size_t vb = i;
      while (i < n && !is_space(line[i]) && line[i] != '#') ++i;
      tok.text = line.substr(vb, i - vb);
    }
    skip();
    if (i < n && line[i] != '#') {
      report(lineno, i + 1, "unexpected text after value");
      continue;
    }
    if (tok.text.empty() && !tok.quoted) {
      report(lineno, value_col, "missing value for '" + key + "'");
      continue;
    }
    const auto it = setters().find(key);
    if (it == setters().end()) {
      report(lineno, key_col, "unknown key '" + key + "'");
      continue;
    }
    if (!seen.insert(key).second) {
      report(lineno, key_col, "duplicate key '" + key + "'");
      continue;
    }
    const std::string err = it->second(cfg, tok);
    if (!err.empty()) report(lineno, value_col, key + ": " + err);
  }

  for (const char* required : {"model", "grid.nx", "grid.ny"})
    if (!seen.count(required)) problems.push_back(source + ": missing required key '" + required + "'");
  if (!problems.empty()) throw ConfigError(std::move(problems));

  auto v = cfg.violations();
  if (!v.empty()) throw ConfigError(std::move(v));
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is) throw ConfigError({"cannot open config file " + path.string()});
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

}  // namespace phaseflow
