#pragma once

// Concentration-dependent density and viscosity (linear interpolation between
// the two pure fluids; fluid 1 sits at phi = +1, fluid 2 at phi = -1).
// Arguments outside [-1, 1] are clamped before interpolation so rho and nu
// never leave the physical range.

#include <string>
#include <vector>

namespace phaseflow {

struct FluidParams {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double nu1 = 0.1;
  double nu2 = 0.1;
  double sigma = 1.0;  ///< surface tension (capillary) coefficient
  double gamma = 1.0;  ///< relaxation rate of the Allen-Cahn dynamics

  /// `viscous` = true additionally requires min(nu1, nu2) > 0.
  std::vector<std::string> violations(bool viscous) const;
};

double rho(double s, const FluidParams& f);
double rho_prime(double s, const FluidParams& f);
double rho_second(double s, const FluidParams& f);
double nu(double s, const FluidParams& f);
double nu_prime(double s, const FluidParams& f);

struct SmallnessReport {
  double rho_prime_abs;  ///< sup |rho'| over [-1, 1]
  double threshold;      ///< 4 pi / (C2 R0^2), C2 = 4/theta + log(2 theta)
  bool satisfied;
};

/// Density-contrast smallness condition under which the entropy estimates
/// hold; `r0` is the observed sup of ||grad u||_L2. Diagnostic only.
SmallnessReport smallness_check(const FluidParams& f, double r0, double theta);

}  // namespace phaseflow
