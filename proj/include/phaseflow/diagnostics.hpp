#pragma once

// Run diagnostics: energy split, dissipation residual, entropy integrals,
// separation from the pure states, and the CSV they are written to.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phaseflow/eulerac.hpp"
#include "phaseflow/nsac.hpp"

namespace phaseflow {

enum class Model { transport, nsac, nsac_matched, euler_ac };

std::string to_string(Model m);
std::optional<Model> parse_model(const std::string& s);

struct EnergyParts {
  double total = 0.0;
  double kinetic = 0.0;   ///< integral of rho(phi)|u|^2 / 2
  double gradient = 0.0;  ///< sigma times integral of |grad phi|^2 / 2
  double potential = 0.0; ///< sigma times integral of Psi(phi)
};

/// `include_potential` = false gives the complex-fluids energy (no Psi term).
EnergyParts energy(const VectorField& u, const ScalarField& phi, const FluidParams& fluids,
                   const PotentialParams& potential, PotentialMode mode, bool include_potential = true);
EnergyParts energy(const SimState& s, Model model = Model::nsac);
/// Unit density and unit capillary coefficient.
EnergyParts energy(const EulerState& s);

/// Integral of 2 nu(phi)|Du|^2.
double viscous_dissipation(const VectorField& u, const ScalarField& phi, const FluidParams& fluids);

/// [E(next) - E(prev)]/dt + viscous dissipation at prev
///   + (1/gamma) || (phi_next - phi_prev)/dt + u_prev . grad phi_prev ||^2.
/// The transport model drops the last term; it has no relaxation.
double dissipation_residual(const SimState& prev, const SimState& next, double dt, Model model = Model::nsac);
/// Inviscid version: no viscous term, gamma = 1.
double dissipation_residual(const EulerState& prev, const EulerState& next, double dt);

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy_total = 0.0;
  double energy_kinetic = 0.0;
  double energy_gradient = 0.0;
  double energy_potential = 0.0;
  double dissipation_residual = 0.0;
  double entropy_l1 = 0.0;
  double entropy_sq_log = 0.0;
  double entropy_cross = 0.0;
  double separation_delta = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double u_max = 0.0;
  double grad_phi_max = 0.0;
  double enstrophy = 0.0;
};

/// Entropy columns are NaN when max|phi| >= 1; the residual is NaN without
/// a previous state.
DiagnosticsRecord make_record(const SimState& s, Model model, const SimState* prev = nullptr, double dt = 0.0);
DiagnosticsRecord make_record(const EulerState& s, const EulerState* prev = nullptr, double dt = 0.0);

/// Column names in file order.
const std::vector<std::string>& csv_columns();
void write_csv_header(std::ostream& os);
/// One row, every value printed with 17 significant digits.
void write_csv_row(std::ostream& os, const DiagnosticsRecord& r);
/// Parses a file written by the two functions above; throws
/// std::runtime_error on a malformed header or row.
std::vector<DiagnosticsRecord> read_csv(std::istream& is);

struct SeparationOptions {
  double sigma_cut = 1.0;
  double floor = 1e-3;
};

struct SeparationReport {
  std::size_t samples = 0;  ///< records with t >= sigma_cut
  double inf_delta = 0.0;   ///< NaN when no record qualifies
  double t_at_inf = 0.0;
  bool bounded_away = false;  ///< inf_delta >= floor
  bool guaranteed = true;     ///< false for models without relaxation
  std::string note;
};

/// Throws std::invalid_argument on an empty run.
SeparationReport separation_report(const std::vector<DiagnosticsRecord>& run, const SeparationOptions& options = {},
                                   Model model = Model::nsac);

struct TrudingerMoserReport {
  std::vector<double> values;  ///< integral of exp(4 pi f^2) per sample
  double max = 0.0;
  double mean = 0.0;
};

/// Samples mean-free band-limited f with ||grad f||_2 = 1 and integrates
/// exp(4 pi f^2) over the grid.
TrudingerMoserReport trudinger_moser_probe(const Grid& grid, int samples, std::uint64_t seed, int band = 8);

}  // namespace phaseflow
