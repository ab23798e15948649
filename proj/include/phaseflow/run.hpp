#pragma once

// Run orchestration: time loop, diagnostics CSV, snapshots, checkpoint and
// resume, plus the verification suites driven by the command line tool.
//
// Output directory layout:
//   diagnostics.csv     one row per diag_every steps (step 0 included)
//   snap_<step>.pfns    every snapshot_every steps
//   final.pfns          state at t_end
//   last_good.pfns      state before a failed step
//   summary.txt         key: value lines
//
// Time is n * dt for step n, so a resumed run reproduces the uninterrupted
// one exactly.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phaseflow/config.hpp"
#include "phaseflow/snapshot.hpp"

namespace phaseflow {

enum class RunStatus { ok, numerical_failure, gradient_blow_up };

struct RunOptions {
  /// Continue from this snapshot, appending to the existing diagnostics.
  std::optional<std::filesystem::path> resume_from;
  std::ostream* log = nullptr;
};

struct RunReport {
  RunStatus status = RunStatus::ok;
  int exit_code = 0;
  long steps = 0;  ///< steps taken by this invocation
  double t_final = 0.0;
  double mass_drift = 0.0;          ///< max |mean phi - initial mean|
  double min_separation = 1.0;      ///< min over steps of 1 - max|phi|
  double max_energy_increase = 0.0; ///< max over steps of (E_{n+1} - E_n) / (1 + |E_n|)
  double max_cfl = 0.0;
  int max_newton_iterations = 0;
  std::string failure;
  std::filesystem::path checkpoint;
  std::filesystem::path out_dir;
};

std::string to_string(RunStatus s);

/// Runs `config`. Numerical failures are reported, not thrown; snapshot and
/// I/O problems throw.
RunReport run(const RunConfig& config, const RunOptions& options = {});

/// Snapshot of a state; nsac/transport store ux, uy, phi; euler_ac stores omega, phi.
Snapshot snapshot_of(const SimState& s);
Snapshot snapshot_of(const EulerState& s);

/// Summary of an existing run directory, printed to `os`; returns false if
/// the directory lacks a readable diagnostics file.
bool report(const std::filesystem::path& run_dir, std::ostream& os);

// ---------------------------------------------------------------- verification suites

struct LemmaSuiteOptions {
  std::vector<double> p{2.5, 3.0, 4.0, 8.0};
  int samples = 100;
  std::uint64_t seed = 7;
  int n = 128;
  int band = 8;
  double c_cap = 10.0;
  double spread = 0.2;  ///< fitted constants must satisfy min >= (1 - spread) max
  /// When set, receives one CSV row per sample: p, seed, lhs, rhs_core, ratio.
  std::ostream* samples_csv = nullptr;
};

/// Each suite prints one PASS/FAIL line per check and returns true when all pass.
bool verify_lemma(const LemmaSuiteOptions& options, std::ostream& os);
bool verify_potential_inequalities(const std::vector<double>& thetas, std::size_t points, std::ostream& os);
bool verify_invariants(Model model, int steps, std::ostream& os);

}  // namespace phaseflow
