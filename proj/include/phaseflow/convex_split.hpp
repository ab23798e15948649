#pragma once

// Implicit half of the convex-splitting Allen-Cahn update, shared by the
// Navier-Stokes and Euler couplings:
//
//   phi - dtg * lap(phi) + dtg * F'(phi) = rhs + dtg * xi,    mean(phi) = m,
//
// where xi is the (scalar) Lagrange multiplier of the mean constraint.
//
// The system is solved with Newton's method. Each linearized step
//   (I - dtg lap + dtg diag F''(phi_k)) delta = -(G - mean G),  mean(delta) = 0
// is solved by preconditioned CG restricted to mean-free fields, with the
// constant-coefficient preconditioner a - dtg lap, a = 1 + dtg * mean F''.
// In singular mode an update that would leave (-1 + 1e-14, 1 - 1e-14) is
// halved until it does not.

#include "phaseflow/grid.hpp"
#include "phaseflow/potential.hpp"

namespace phaseflow {

struct ConvexSplitOptions {
  double tol = 1e-10;  ///< max-norm of the projected residual
  int max_iter = 50;   ///< Newton iterations
  int max_cg_iter = 500;
};

struct ConvexSplitResult {
  ScalarField phi;
  double xi = 0.0;
  int iterations = 0;
  int cg_iterations = 0;
  double residual = 0.0;
};

/// Throws StepFailure (carrying the residual) when Newton does not reach
/// `options.tol` within `options.max_iter` iterations.
ConvexSplitResult solve_convex_split(const ScalarField& rhs, const ScalarField& guess, double target_mean, double dtg,
                                     const PotentialParams& potential, PotentialMode mode,
                                     const ConvexSplitOptions& options);

/// Dealiased advection term P(u . grad f).
ScalarField advection(const VectorField& u, const ScalarField& f);
ScalarField advection(const VectorField& u, const Spectrum& f_hat);

}  // namespace phaseflow
