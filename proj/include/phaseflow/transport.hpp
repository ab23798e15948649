#pragma once

// Complex-fluids model: phi is carried by the flow with no relaxation,
//
//   phi_t + u.grad phi = 0,
//
// and u follows the Navier-Stokes stepper with the capillary force
// -sigma lap(phi) grad(phi). The model is only locally well posed, so the
// stepper watches max|grad phi| and throws GradientBlowUp past a ceiling.

#include "phaseflow/grid.hpp"
#include "phaseflow/nsac.hpp"

namespace phaseflow::transport {

struct SchemeParams {
  NsacSchemeParams flow;
  /// Absolute ceiling on max|grad phi|; <= 0 disables the monitor.
  double grad_ceiling = 0.0;
};

/// One dealiased pseudo-spectral advection step with u frozen (three-stage
/// SSP Runge-Kutta). Every increment lies in the retained modes, so phi stays
/// band-limited if it starts that way; on such data the advection operator is
/// skew and the step never increases the L2 norm while |u| |k| dt < sqrt(3).
/// Runs project the initial condition onto the retained modes.
ScalarField advect(const ScalarField& phi, const VectorField& u, double dt);

SimState step(const SimState& state, const SchemeParams& scheme, StepInfo* info = nullptr);

/// max |grad phi| over the grid.
double grad_max(const ScalarField& phi);

}  // namespace phaseflow::transport
