#include "phaseflow/eulerac.hpp"

#include <algorithm>
#include <cmath>

#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"

namespace phaseflow {

EulerState::EulerState(ScalarField omega_, ScalarField phi_, PotentialParams potential_, PotentialMode mode_, double t_)
    : t(t_), omega(std::move(omega_)), phi(std::move(phi_)), potential(potential_), mode(mode_)
{
  require_same_grid(omega.grid(), phi.grid(), "EulerState");
}

namespace {

constexpr Complex kI(0.0, 1.0);

void remove_mean(ScalarField& f) { kernels::shift(f.values(), -mean(f)); }

// -P_d(u(omega) . grad omega) + forcing, mean removed
ScalarField advective_rhs(const ScalarField& omega, const ScalarField& forcing)
{
  const Spectrum w = transform(omega);
  const VectorField u = velocity_from_vorticity(omega);
  ScalarField out = advection(u, w);
  kernels::transform(out.values(), forcing.values(), out.values(), [](double a, double f) { return f - a; });
  remove_mean(out);
  return out;
}

}  // namespace

VectorField velocity_from_vorticity(const ScalarField& omega)
{
  const double m = mean(omega);
  if (std::abs(m) > 1e-12)
    throw DomainError("velocity_from_vorticity: vorticity mean " + std::to_string(m) + " is not zero");
  const Grid& g = omega.grid();
  const Spectrum w = transform(omega);
  // psi_hat = w_hat / k^2 (lap psi = -omega); u = (d_y psi, -d_x psi)
  Spectrum ux(g), uy(g);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) {
      const double k2 = g.k_squared(ix, iy);
      if (k2 == 0.0) continue;
      const Complex psi = w.at(ix, iy) / k2;
      ux.at(ix, iy) = kI * g.dky(iy) * psi;
      uy.at(ix, iy) = -kI * g.dkx(ix) * psi;
    }
  return VectorField(inverse_transform(ux), inverse_transform(uy));
}

ScalarField vorticity_forcing(const ScalarField& phi, const PotentialParams& p, PotentialMode mode)
{
  const VectorField gmu = gradient(chemical_potential(phi, p, mode));
  const VectorField gphi = gradient(phi);
  ScalarField f(phi.grid());
  auto fv = f.values();
  const auto mx = gmu.x.values(), my = gmu.y.values(), px = gphi.x.values(), py = gphi.y.values();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(fv.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) fv[i] = mx[i] * py[i] - my[i] * px[i];
  ScalarField out = dealias(f);
  remove_mean(out);
  return out;
}

ScalarField vorticity_rhs(const EulerState& state)
{
  return advective_rhs(state.omega, vorticity_forcing(state.phi, state.potential, state.mode));
}

EulerState step(const EulerState& state, double dt, const EulerSchemeParams& scheme, StepInfo* info)
{
  if (!(dt > 0.0)) throw std::invalid_argument("euler step: dt must be positive");
  const Grid& g = state.grid();
  const VectorField u = velocity_from_vorticity(state.omega);

  const double theta0 = state.potential.theta0;
  const ScalarField adv = advection(u, state.phi);
  ScalarField rhs(g);
  kernels::transform(state.phi.values(), adv.values(), rhs.values(),
                     [=](double p, double a) { return p + dt * (-a + theta0 * p); });
  ConvexSplitOptions opts;
  opts.tol = scheme.newton_tol;
  opts.max_iter = scheme.newton_max_iter;
  ConvexSplitResult r = solve_convex_split(rhs, state.phi, mean(state.phi), dt, state.potential, state.mode, opts);

  const ScalarField forcing =
      scheme.coupling ? vorticity_forcing(r.phi, state.potential, state.mode) : ScalarField(g, 0.0);
  const ScalarField k1 = advective_rhs(state.omega, forcing);
  ScalarField w1 = state.omega;
  kernels::axpy(dt, k1.values(), w1.values());
  const ScalarField k2 = advective_rhs(w1, forcing);
  ScalarField w = state.omega;
  {
    auto wv = w.values();
    const auto a = k1.values(), b = k2.values();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(wv.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) wv[i] += 0.5 * dt * (a[i] + b[i]);
  }
  remove_mean(w);

  if (info != nullptr) {
    info->newton_iterations = r.iterations;
    info->cg_iterations = r.cg_iterations;
    info->newton_residual = r.residual;
    info->xi = r.xi;
    info->cfl = max_abs(u) * dt / std::min(g.dx(), g.dy());
    info->cfl_warning = info->cfl > 1.0;
  }
  return EulerState(std::move(w), std::move(r.phi), state.potential, state.mode, state.t + dt);
}

}  // namespace phaseflow
