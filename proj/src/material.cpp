#include "phaseflow/material.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaseflow/potential.hpp"

namespace phaseflow {

std::vector<std::string> FluidParams::violations(bool viscous) const
{
  std::vector<std::string> out;
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) out.push_back("fluids: rho1 and rho2 must be positive");
  if (!(nu1 >= 0.0) || !(nu2 >= 0.0)) out.push_back("fluids: nu1 and nu2 must be non-negative");
  if (viscous && !(std::min(nu1, nu2) > 0.0)) out.push_back("fluids: viscous models require min(nu1, nu2) > 0");
  if (!(sigma > 0.0)) out.push_back("fluids.sigma must be positive");
  if (!(gamma > 0.0)) out.push_back("fluids.gamma must be positive");
  return out;
}

namespace {
double clamp_unit(double s) { return std::clamp(s, -1.0, 1.0); }
}  // namespace

double rho(double s, const FluidParams& f)
{
  const double c = clamp_unit(s);
  return f.rho1 * 0.5 * (1.0 + c) + f.rho2 * 0.5 * (1.0 - c);
}

double rho_prime(double, const FluidParams& f) { return 0.5 * (f.rho1 - f.rho2); }

double rho_second(double, const FluidParams&) { return 0.0; }

double nu(double s, const FluidParams& f)
{
  const double c = clamp_unit(s);
  return f.nu1 * 0.5 * (1.0 + c) + f.nu2 * 0.5 * (1.0 - c);
}

double nu_prime(double, const FluidParams& f) { return 0.5 * (f.nu1 - f.nu2); }

SmallnessReport smallness_check(const FluidParams& f, double r0, double theta)
{
  const double c2 = entropy_constants(theta).c2;
  SmallnessReport r{};
  r.rho_prime_abs = std::abs(rho_prime(0.0, f));
  r.threshold = 4.0 * std::numbers::pi / (c2 * r0 * r0);
  r.satisfied = r.rho_prime_abs <= r.threshold;
  return r;
}

}  // namespace phaseflow
