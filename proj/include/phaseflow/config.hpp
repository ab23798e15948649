#pragma once

// Run configuration and its text format.
//
// One `key = value` assignment per line; '#' starts a comment; blank lines
// are ignored. Keys are dotted paths (grid.nx, fluids.rho1, ...). Values are
// numbers, true/false, bare words, or double-quoted strings. Every key may
// appear at most once. `model`, `grid.nx` and `grid.ny` are required; all
// other keys have defaults (see the README for the full list).

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseflow/diagnostics.hpp"
#include "phaseflow/material.hpp"
#include "phaseflow/potential.hpp"

namespace phaseflow {

/// Parse or validation failure; `problems` lists every issue found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct GridConfig {
  int nx = 0;
  int ny = 0;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;
};

struct SchemeConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  double nu_split = -1.0;  ///< negative: (nu1 + nu2) / 2
  bool capillary = true;
  /// Transport runs stop once max|grad phi| exceeds this multiple of its
  /// initial value.
  double grad_ceiling_factor = 1e3;
};

enum class InitialKind { bubble, random, from_snapshot };
enum class VelocityKind { zero, taylor_green, random };

struct InitialConfig {
  InitialKind kind = InitialKind::bubble;
  // bubble: phi = (in+out)/2 + (in-out)/2 tanh((radius - d)/width), d the
  // periodic distance to the center; a negative center means the domain center
  double center_x = -1.0;
  double center_y = -1.0;
  double radius = 1.0;
  double width = 0.1;
  double inside = 0.95;
  double outside = -0.95;
  // random: mean + amplitude * f / max|f| for a band-limited f
  double mean = 0.0;
  double amplitude = 0.5;
  std::uint64_t seed = 1;
  int band = 8;
  // from_snapshot
  std::string path;
  // initial velocity (vorticity = its curl for euler_ac)
  VelocityKind velocity = VelocityKind::zero;
  double velocity_amplitude = 1.0;
  std::uint64_t velocity_seed = 2;
  int velocity_band = 4;
};

struct OutputConfig {
  int diag_every = 10;
  int snapshot_every = 0;  ///< 0: only the final snapshot
  std::string out_dir = "run";
};

struct RunConfig {
  Model model = Model::nsac;
  GridConfig grid;
  PotentialParams potential;
  PotentialMode mode = PotentialMode::singular;
  FluidParams fluids;
  SchemeConfig scheme;
  InitialConfig initial;
  OutputConfig output;

  /// Every violated invariant, including those of the initial condition.
  std::vector<std::string> violations() const;
};

/// Initial order parameter and velocity described by `config` (not for
/// from_snapshot, which run() loads itself).
ScalarField initial_phi(const RunConfig& config, const Grid& grid);
VectorField initial_velocity(const RunConfig& config, const Grid& grid);

/// Parses and validates; throws ConfigError listing all problems. Parse
/// problems are reported as "<source>:<line>:<column>: message".
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config(const std::filesystem::path& path);

}  // namespace phaseflow
