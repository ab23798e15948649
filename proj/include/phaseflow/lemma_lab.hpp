#pragma once

// Numerical checks of the logarithmic product estimate
//
//   ||f g||_2 <= C sqrt(p/(p-2)) ||f||_H1 ||g||_2 sqrt(log(e |Omega|^((p-2)/(2p)) ||g||_p / ||g||_2))
//
// on the torus, and of the radial pair showing it cannot be improved to
// f in H1, g in L2.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phaseflow/grid.hpp"

namespace phaseflow {

// ---------------------------------------------------------------- spectral norms

/// sqrt(|Omega| sum_k (1 + |k|^2)^s |c_k|^2); s = 0 is the L2 norm.
double sobolev_norm(const ScalarField& f, double s);
double lp_norm(const ScalarField& f, double p);

struct DyadicDecomposition {
  std::vector<ScalarField> shells;  ///< f_0 .. f_N, shell n: e^n <= sqrt(1+|k|^2) < e^(n+1)
  ScalarField tail;                 ///< sqrt(1+|k|^2) >= e^(N+1)
};

DyadicDecomposition dyadic_decompose(const ScalarField& f, int n_shells);

// ---------------------------------------------------------------- product estimate

struct ProductEstimateSample {
  double p = 0.0;
  std::uint64_t seed = 0;
  double lhs = 0.0;  ///< ||f g||_2
  double h1_f = 0.0;
  double l2_g = 0.0;
  double lp_g = 0.0;
  double log_arg = 0.0;  ///< e |Omega|^((p-2)/(2p)) ||g||_p / ||g||_2, always >= e
  double rhs_core = 0.0;
  double ratio = 0.0;  ///< lhs / rhs_core
};

/// The estimate's ingredients for one pair; throws std::invalid_argument if
/// g vanishes identically or p <= 2.
ProductEstimateSample product_estimate(const ScalarField& f, const ScalarField& g, double p);

struct EstimateOptions {
  int band = 8;         ///< random pairs use modes |m| <= band
  double c_cap = 10.0;  ///< PASS threshold on the largest ratio
};

struct EstimateReport {
  double p = 0.0;
  std::vector<ProductEstimateSample> samples;
  double max_ratio = 0.0;
  /// max over samples of lhs / (h1_f l2_g sqrt(log_arg)): the ratio with the
  /// explicit sqrt(p/(p-2)) factor removed.
  double fitted_constant = 0.0;
  bool pass = false;
};

/// Sample k uses f, g drawn from derive_seed(seed, 2k) and derive_seed(seed, 2k+1),
/// so the same seed gives the same pairs for every p.
EstimateReport verify_estimate(const Grid& grid, int samples, double p, std::uint64_t seed,
                               const EstimateOptions& options = {});

// ---------------------------------------------------------------- sharpness pair

struct CounterexampleOptions {
  std::vector<double> r0_ladder{1e-2, 1e-3, 1e-4};
  /// Radius of the disk the norms are taken over. log(1/r) vanishes at r = 1,
  /// where g stops being square integrable, so the disk stays inside it.
  double outer_radius = 0.9;
  double p = 4.0;
  int gauss_points = 6;
  double grading = 0.25;  ///< smooth cells satisfy h <= grading * distance to the origin
};

struct CounterexampleRow {
  double r0 = 0.0;
  double l2_g = 0.0;
  double lp_g = 0.0;
  double l2_f = 0.0;
  double h1_f = 0.0;
  double l2_fg = 0.0;
};

struct CounterexampleReport {
  double alpha = 0.0;
  double beta = 0.0;
  bool admissible = true;  ///< 1/2 < alpha < 1 and alpha - beta < 1/2
  std::string message;
  std::vector<CounterexampleRow> rows;
};

/// g = 1/(r L^alpha), f = L^beta with L = log(1/r), r clamped to >= r0,
/// integrated over the disk by adaptive tensor Gauss-Legendre quadrature on a
/// quadtree refined toward the origin and both circles r = r0, r = R.
CounterexampleReport counterexample_probe(double alpha, double beta, const CounterexampleOptions& options = {});

/// Integral of the radial function h(r) over the disk of radius
/// options.outer_radius. `r0` marks a circle where h may have a kink; h must
/// be constant for r < r0.
double disk_integral(const std::function<double(double)>& h, double r0, const CounterexampleOptions& options);

}  // namespace phaseflow
