#pragma once

// Inviscid Euler-Allen-Cahn system in vorticity-streamfunction form:
//
//   omega_t + u.grad omega = grad(mu) . (grad phi)^perp,   v^perp = (v_y, -v_x)
//   phi_t + u.grad phi + mu - mean(mu) = 0
//
// with omega = d_x u_y - d_y u_x and u = (d_y psi, -d_x psi), lap psi = -omega.
// For omega = sin(x) this gives u = (0, -cos(x)).
//
// phi uses the convex-split implicit update of the Navier-Stokes coupling with
// no density term; omega takes one Heun (RK2) step with the forcing frozen at
// phi^{n+1}.

#include "phaseflow/convex_split.hpp"
#include "phaseflow/grid.hpp"
#include "phaseflow/nsac.hpp"
#include "phaseflow/potential.hpp"

namespace phaseflow {

struct EulerState {
  EulerState(ScalarField omega, ScalarField phi, PotentialParams potential = {},
             PotentialMode mode = PotentialMode::singular, double t = 0.0);

  const Grid& grid() const noexcept { return phi.grid(); }

  double t;
  ScalarField omega;
  ScalarField phi;
  PotentialParams potential;
  PotentialMode mode;
};

struct EulerSchemeParams {
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  /// Coupling force in the vorticity equation; off gives pure 2D Euler.
  bool coupling = true;
};

/// Throws DomainError when |mean(omega)| > 1e-12.
VectorField velocity_from_vorticity(const ScalarField& omega);

/// grad(mu) . (grad phi)^perp, dealiased, with its mean removed.
ScalarField vorticity_forcing(const ScalarField& phi, const PotentialParams& p,
                              PotentialMode mode = PotentialMode::singular);

/// -u.grad omega + forcing, dealiased; the k = 0 mode is set to zero.
ScalarField vorticity_rhs(const EulerState& state);

/// `info->cfl_warning` is set when max|u| dt / dx > 1.
EulerState step(const EulerState& state, double dt, const EulerSchemeParams& scheme = {}, StepInfo* info = nullptr);

}  // namespace phaseflow
