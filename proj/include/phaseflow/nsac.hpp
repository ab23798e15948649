#pragma once

// Mass-conserving Navier-Stokes-Allen-Cahn stepper on the periodic torus.
//
//   rho(phi)(u_t + u.grad u) - div(2 nu(phi) Du) + grad P = -sigma lap(phi) grad(phi)
//   phi_t + u.grad phi + gamma (mu + rho'(phi)|u|^2/2 - xi) = 0,   div u = 0
//
// with mu = -lap(phi) + Psi'(phi) and xi the multiplier that keeps mean(phi)
// fixed. The pressure is never formed; forces are Leray-projected.
//
// One step: phi first (convex splitting, Newton on the implicit F' part,
// advection and the kinetic coupling explicit with u^n), then u (viscosity
// split around nu_split and treated implicitly, everything else explicit,
// divided by rho(phi^n), then projected).

#include <string>
#include <vector>

#include "phaseflow/convex_split.hpp"
#include "phaseflow/grid.hpp"
#include "phaseflow/material.hpp"
#include "phaseflow/potential.hpp"

namespace phaseflow {

struct SimState {
  SimState(VectorField u, ScalarField phi, PotentialParams potential = {}, FluidParams fluids = {},
           PotentialMode mode = PotentialMode::singular, double t = 0.0);

  const Grid& grid() const noexcept { return phi.grid(); }

  double t;
  VectorField u;
  ScalarField phi;
  PotentialParams potential;
  FluidParams fluids;
  PotentialMode mode;
};

struct NsacSchemeParams {
  double dt = 1e-3;
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  /// Kinematic viscosity treated implicitly; negative selects (nu1 + nu2) / 2.
  double nu_split = -1.0;
  /// Capillary force in the momentum equation; off decouples the flow.
  bool capillary = true;

  double effective_nu_split(const FluidParams& f) const;
  std::vector<std::string> violations(const FluidParams& f) const;
};

struct StepInfo {
  int newton_iterations = 0;
  int cg_iterations = 0;
  double newton_residual = 0.0;
  double xi = 0.0;
  double cfl = 0.0;
  bool cfl_warning = false;
};

/// mu = -lap(phi) + F'(phi) - theta0 phi, dealiased.
ScalarField chemical_potential(const ScalarField& phi, const PotentialParams& p,
                               PotentialMode mode = PotentialMode::singular);

/// Grid-quadrature mean of mu + rho'(phi)|u|^2/2.
double xi_multiplier(const ScalarField& mu, const VectorField& u, const ScalarField& phi, const FluidParams& fluids);

/// -sigma lap(phi) grad(phi), dealiased. Differs from -sigma div(grad phi (x)
/// grad phi) by the gradient sigma grad(|grad phi|^2)/2.
VectorField korteweg_force(const ScalarField& phi, double sigma);

/// div(2 nu(phi) Du), dealiased.
VectorField viscous_force(const VectorField& u, const ScalarField& phi, const FluidParams& fluids);

/// Dealiased convective term (u.grad)u.
VectorField convection(const VectorField& u);

ScalarField step_phi(const SimState& state, const NsacSchemeParams& scheme, StepInfo* info = nullptr);
VectorField step_velocity(const SimState& state, const ScalarField& phi_new, const NsacSchemeParams& scheme);
SimState step(const SimState& state, const NsacSchemeParams& scheme, StepInfo* info = nullptr);

/// Dedicated stepper for the matched-density system (rho = 1, xi = mean mu),
/// written without any density terms; used as an independent reference.
SimState step_matched(const SimState& state, const NsacSchemeParams& scheme, StepInfo* info = nullptr);

}  // namespace phaseflow
