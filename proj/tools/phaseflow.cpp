// phaseflow command line: simulate, verify, probe-counterexample, report.
//
// Exit codes: 0 ok, 1 verification failure or I/O error, 2 config error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "phaseflow/kernels.hpp"
#include "phaseflow/lemma_lab.hpp"
#include "phaseflow/run.hpp"

using namespace phaseflow;

namespace {

int simulate(const std::string& config_path, const std::string& resume)
{
  RunConfig config;
  try {
    config = parse_config(config_path);
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) std::cerr << p << '\n';
    return 2;
  }
  RunOptions options;
  options.log = &std::cerr;
  if (!resume.empty()) options.resume_from = resume;
  const RunReport r = run(config, options);
  std::cout << "status: " << to_string(r.status) << '\n'
            << "steps: " << r.steps << '\n'
            << "t_final: " << r.t_final << '\n'
            << "mass_drift: " << r.mass_drift << '\n'
            << "min_separation: " << r.min_separation << '\n'
            << "output: " << r.out_dir.string() << '\n';
  if (!r.failure.empty()) {
    std::cerr << "failure: " << r.failure << '\n';
    std::cerr << "last good state: " << r.checkpoint.string() << '\n';
  }
  return r.exit_code;
}

int probe(double alpha, double beta, const std::vector<double>& ladder, double radius, double p)
{
  CounterexampleOptions o;
  if (!ladder.empty()) o.r0_ladder = ladder;
  o.outer_radius = radius;
  o.p = p;
  const CounterexampleReport r = counterexample_probe(alpha, beta, o);
  if (!r.admissible) std::cerr << "warning: " << r.message << '\n';
  std::cout << "r0,l2_g,lp_g,l2_f,h1_f,l2_fg\n" << std::setprecision(10);
  for (const auto& row : r.rows)
    std::cout << row.r0 << ',' << row.l2_g << ',' << row.lp_g << ',' << row.l2_f << ',' << row.h1_f << ','
              << row.l2_fg << '\n';
  return r.admissible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  try {
    kernels::configure_threads_from_env();
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Pseudo-spectral simulator for diffuse-interface flows on the periodic torus"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run a configured simulation");
  std::string config_path, resume;
  sim->add_option("config", config_path, "Configuration file")->required();
  sim->add_option("--resume", resume, "Continue from a snapshot in the run directory");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  ver->add_option("suite", suite, "lemma | potential_inequalities | invariants")
      ->required()
      ->check(CLI::IsMember({"lemma", "potential_inequalities", "invariants"}));
  LemmaSuiteOptions lemma;
  std::vector<double> p_values;
  std::vector<double> thetas{0.5, 1.0, 2.0};
  std::size_t points = 100000;
  std::string model_name = "nsac";
  int steps = 1000;
  std::string csv_path;
  ver->add_option("--p", p_values, "Exponents p > 2 (lemma)");
  ver->add_option("--samples", lemma.samples, "Random pairs per p (lemma)");
  ver->add_option("--seed", lemma.seed, "Master seed (lemma)");
  ver->add_option("--n", lemma.n, "Grid size (lemma)");
  ver->add_option("--csv", csv_path, "Write per-sample rows to this file (lemma)");
  ver->add_option("--theta", thetas, "Temperatures (potential_inequalities)");
  ver->add_option("--points", points, "Sample points (potential_inequalities)");
  ver->add_option("--model", model_name, "transport | nsac | nsac_matched | euler_ac (invariants)");
  ver->add_option("--steps", steps, "Time steps (invariants)");

  auto* pr = app.add_subcommand("probe-counterexample", "Radial sharpness pair across a ladder of cutoffs");
  double alpha = 0.75, beta = 0.49, radius = 0.9, p_probe = 4.0;
  std::vector<double> ladder;
  pr->add_option("--alpha", alpha, "Exponent of g");
  pr->add_option("--beta", beta, "Exponent of f");
  pr->add_option("--r0-ladder", ladder, "Cutoff radii");
  pr->add_option("--outer-radius", radius, "Support radius, below 1");
  pr->add_option("--p", p_probe, "Lebesgue exponent reported for g");

  auto* rep = app.add_subcommand("report", "Summarize a run directory");
  std::string run_dir;
  rep->add_option("run_dir", run_dir, "Output directory of a run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*sim) return simulate(config_path, resume);
    if (*pr) return probe(alpha, beta, ladder, radius, p_probe);
    if (*rep) return report(run_dir, std::cout) ? 0 : 1;
    if (suite == "lemma") {
      if (!p_values.empty()) lemma.p = p_values;
      std::ofstream csv;
      if (!csv_path.empty()) {
        csv.open(csv_path);
        lemma.samples_csv = &csv;
      }
      return verify_lemma(lemma, std::cout) ? 0 : 1;
    }
    if (suite == "potential_inequalities") return verify_potential_inequalities(thetas, points, std::cout) ? 0 : 1;
    const auto model = parse_model(model_name);
    if (!model) {
      std::cerr << "unknown model: " << model_name << '\n';
      return 2;
    }
    return verify_invariants(*model, steps, std::cout) ? 0 : 1;
  } catch (const SnapshotError& e) {
    std::cerr << "snapshot: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
}
