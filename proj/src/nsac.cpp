#include "phaseflow/nsac.hpp"

#include <algorithm>
#include <cmath>

#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"

namespace phaseflow {

SimState::SimState(VectorField u_, ScalarField phi_, PotentialParams potential_, FluidParams fluids_,
                   PotentialMode mode_, double t_)
    : t(t_), u(std::move(u_)), phi(std::move(phi_)), potential(potential_), fluids(fluids_), mode(mode_)
{
  require_same_grid(u.grid(), phi.grid(), "SimState");
}

double NsacSchemeParams::effective_nu_split(const FluidParams& f) const
{
  return nu_split < 0.0 ? 0.5 * (f.nu1 + f.nu2) : nu_split;
}

std::vector<std::string> NsacSchemeParams::violations(const FluidParams& f) const
{
  std::vector<std::string> out;
  if (!(dt > 0.0)) out.push_back("scheme.dt must be positive");
  if (!(newton_tol > 0.0)) out.push_back("scheme.newton_tol must be positive");
  if (newton_max_iter < 1) out.push_back("scheme.newton_max_iter must be at least 1");
  if (nu_split >= 0.0 && nu_split < 0.5 * std::max(f.nu1, f.nu2))
    out.push_back("scheme.nu_split must be at least max(nu1, nu2)/2");
  return out;
}

namespace {

constexpr Complex kI(0.0, 1.0);

ConvexSplitOptions newton_options(const NsacSchemeParams& s)
{
  ConvexSplitOptions o;
  o.tol = s.newton_tol;
  o.max_iter = s.newton_max_iter;
  return o;
}

// Constant-coefficient implicit viscosity, Leray projection and the
// dealiasing filter applied to u*: u' = P_d P (I - dt nu lap)^{-1} u*.
VectorField implicit_viscous_project(const VectorField& ustar, double dt, double nu_s)
{
  const Grid& g = ustar.grid();
  Spectrum vx = transform(ustar.x);
  Spectrum vy = transform(ustar.y);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) {
      if (!g.retained(ix, iy)) {
        vx.at(ix, iy) = 0.0;
        vy.at(ix, iy) = 0.0;
        continue;
      }
      const double damp = 1.0 / (1.0 + dt * nu_s * g.k_squared(ix, iy));
      Complex a = vx.at(ix, iy) * damp, b = vy.at(ix, iy) * damp;
      const double kx = g.dkx(ix), ky = g.dky(iy);
      const double k2 = kx * kx + ky * ky;
      if (k2 > 0.0) {
        const Complex kdotv = (kx * a + ky * b) / k2;
        a -= kx * kdotv;
        b -= ky * kdotv;
      }
      vx.at(ix, iy) = a;
      vy.at(ix, iy) = b;
    }
  return VectorField(inverse_transform(vx), inverse_transform(vy));
}

// u + dt * (-conv + force_over_rho - nu_s lap u)
VectorField explicit_velocity(const VectorField& u, const VectorField& conv, const VectorField& force_over_rho,
                              double dt, double nu_s)
{
  const ScalarField lx = laplacian(u.x);
  const ScalarField ly = laplacian(u.y);
  VectorField out(u.grid());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.grid().size());
  const auto ux = u.x.values(), uy = u.y.values();
  const auto cx = conv.x.values(), cy = conv.y.values();
  const auto fx = force_over_rho.x.values(), fy = force_over_rho.y.values();
  const auto lxv = lx.values(), lyv = ly.values();
  auto ox = out.x.values(), oy = out.y.values();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ox[i] = ux[i] + dt * (-cx[i] + fx[i] - nu_s * lxv[i]);
    oy[i] = uy[i] + dt * (-cy[i] + fy[i] - nu_s * lyv[i]);
  }
  return out;
}

VectorField momentum_forces(const VectorField& u, const ScalarField& phi_new, const FluidParams& fluids,
                            bool capillary)
{
  VectorField f = viscous_force(u, phi_new, fluids);
  if (capillary) {
    const VectorField k = korteweg_force(phi_new, fluids.sigma);
    f.x += k.x;
    f.y += k.y;
  }
  return f;
}

}  // namespace

ScalarField chemical_potential(const ScalarField& phi, const PotentialParams& p, PotentialMode mode)
{
  const ScalarField lap = laplacian(phi);
  ScalarField mu(phi.grid());
  kernels::transform(phi.values(), lap.values(), mu.values(),
                     [&](double s, double l) { return -l + convex_d1(s, p, mode) - p.theta0 * s; });
  return dealias(mu);
}

double xi_multiplier(const ScalarField& mu, const VectorField& u, const ScalarField& phi, const FluidParams& fluids)
{
  require_same_grid(mu.grid(), phi.grid(), "xi_multiplier");
  require_same_grid(u.grid(), phi.grid(), "xi_multiplier");
  const auto m = mu.values(), ux = u.x.values(), uy = u.y.values(), ph = phi.values();
  const double s = kernels::reduce_sum(m.size(), [&](std::size_t i) {
    return m[i] + 0.5 * rho_prime(ph[i], fluids) * (ux[i] * ux[i] + uy[i] * uy[i]);
  });
  return s / static_cast<double>(m.size());
}

VectorField korteweg_force(const ScalarField& phi, double sigma)
{
  const Grid& g = phi.grid();
  const Spectrum ph = transform(phi);
  const VectorField grad = gradient(ph);
  Spectrum lap_hat(g);
  {
    auto in = ph.coeffs();
    auto out = lap_hat.coeffs();
    const int nkx = g.nkx(), ny = g.ny();
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nkx; ++ix) {
        const std::size_t k = g.spectral_index(ix, iy);
        out[k] = -g.k_squared(ix, iy) * in[k];
      }
  }
  const ScalarField lap = inverse_transform(lap_hat);
  VectorField f(g);
  kernels::transform(lap.values(), grad.x.values(), f.x.values(), [sigma](double l, double d) { return -sigma * l * d; });
  kernels::transform(lap.values(), grad.y.values(), f.y.values(), [sigma](double l, double d) { return -sigma * l * d; });
  return VectorField(dealias(f.x), dealias(f.y));
}

VectorField viscous_force(const VectorField& u, const ScalarField& phi, const FluidParams& fluids)
{
  require_same_grid(u.grid(), phi.grid(), "viscous_force");
  const Grid& g = u.grid();
  const VectorField gx = gradient(u.x);
  const VectorField gy = gradient(u.y);
  ScalarField sxx(g), sxy(g), syy(g);
  {
    const auto ph = phi.values();
    const auto ax = gx.x.values(), ay = gx.y.values(), bx = gy.x.values(), by = gy.y.values();
    auto pxx = sxx.values(), pxy = sxy.values(), pyy = syy.values();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double v = nu(ph[i], fluids);
      pxx[i] = 2.0 * v * ax[i];
      pxy[i] = v * (ay[i] + bx[i]);
      pyy[i] = 2.0 * v * by[i];
    }
  }
  const bool constant_nu = fluids.nu1 == fluids.nu2;
  Spectrum hxx = transform(sxx), hxy = transform(sxy), hyy = transform(syy);
  Spectrum fx(g), fy(g);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) {
      if (!constant_nu && !g.retained(ix, iy)) continue;
      const double kx = g.dkx(ix), ky = g.dky(iy);
      fx.at(ix, iy) = kI * (kx * hxx.at(ix, iy) + ky * hxy.at(ix, iy));
      fy.at(ix, iy) = kI * (kx * hxy.at(ix, iy) + ky * hyy.at(ix, iy));
    }
  return VectorField(inverse_transform(fx), inverse_transform(fy));
}

VectorField convection(const VectorField& u)
{
  const Grid& g = u.grid();
  const VectorField gx = gradient(u.x);
  const VectorField gy = gradient(u.y);
  VectorField c(g);
  const auto ux = u.x.values(), uy = u.y.values();
  const auto ax = gx.x.values(), ay = gx.y.values(), bx = gy.x.values(), by = gy.y.values();
  auto cx = c.x.values(), cy = c.y.values();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cx[i] = ux[i] * ax[i] + uy[i] * ay[i];
    cy[i] = ux[i] * bx[i] + uy[i] * by[i];
  }
  return VectorField(dealias(c.x), dealias(c.y));
}

ScalarField step_phi(const SimState& state, const NsacSchemeParams& scheme, StepInfo* info)
{
  const double dt = scheme.dt, gamma = state.fluids.gamma, theta0 = state.potential.theta0;
  const ScalarField adv = advection(state.u, state.phi);
  ScalarField rhs(state.grid());
  {
    const auto ph = state.phi.values(), av = adv.values(), ux = state.u.x.values(), uy = state.u.y.values();
    auto b = rhs.values();
    const FluidParams& fl = state.fluids;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(b.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double kin = 0.5 * rho_prime(ph[i], fl) * (ux[i] * ux[i] + uy[i] * uy[i]);
      b[i] = ph[i] + dt * (-av[i] + gamma * theta0 * ph[i] - gamma * kin);
    }
  }
  ConvexSplitResult r = solve_convex_split(rhs, state.phi, mean(state.phi), dt * gamma, state.potential, state.mode,
                                           newton_options(scheme));
  if (info != nullptr) {
    info->newton_iterations = r.iterations;
    info->cg_iterations = r.cg_iterations;
    info->newton_residual = r.residual;
    info->xi = r.xi;
  }
  return std::move(r.phi);
}

VectorField step_velocity(const SimState& state, const ScalarField& phi_new, const NsacSchemeParams& scheme)
{
  require_same_grid(state.grid(), phi_new.grid(), "step_velocity");
  const FluidParams& fl = state.fluids;
  const double nu_s = scheme.effective_nu_split(fl);
  const VectorField conv = convection(state.u);
  VectorField f = momentum_forces(state.u, phi_new, fl, scheme.capillary);
  if (fl.rho1 == fl.rho2) {
    f.x *= 1.0 / fl.rho1;
    f.y *= 1.0 / fl.rho1;
  } else {
    ScalarField inv_rho(state.grid());
    kernels::transform(state.phi.values(), inv_rho.values(), [&fl](double s) { return 1.0 / rho(s, fl); });
    f = VectorField(dealiased_product(f.x, inv_rho), dealiased_product(f.y, inv_rho));
  }
  return implicit_viscous_project(explicit_velocity(state.u, conv, f, scheme.dt, nu_s), scheme.dt, nu_s);
}

SimState step(const SimState& state, const NsacSchemeParams& scheme, StepInfo* info)
{
  ScalarField phi_new = step_phi(state, scheme, info);
  VectorField u_new = step_velocity(state, phi_new, scheme);
  if (info != nullptr) {
    info->cfl = max_abs(state.u) * scheme.dt / std::min(state.grid().dx(), state.grid().dy());
    info->cfl_warning = info->cfl > 1.0;
  }
  return SimState(std::move(u_new), std::move(phi_new), state.potential, state.fluids, state.mode,
                  state.t + scheme.dt);
}

SimState step_matched(const SimState& state, const NsacSchemeParams& scheme, StepInfo* info)
{
  const double dt = scheme.dt, gamma = state.fluids.gamma, theta0 = state.potential.theta0;
  const ScalarField adv = advection(state.u, state.phi);
  ScalarField rhs(state.grid());
  kernels::transform(state.phi.values(), adv.values(), rhs.values(),
                     [=](double p, double a) { return p + dt * (-a + gamma * theta0 * p); });
  ConvexSplitResult r = solve_convex_split(rhs, state.phi, mean(state.phi), dt * gamma, state.potential, state.mode,
                                           newton_options(scheme));
  if (info != nullptr) {
    info->newton_iterations = r.iterations;
    info->cg_iterations = r.cg_iterations;
    info->newton_residual = r.residual;
    info->xi = r.xi;
    info->cfl = max_abs(state.u) * dt / std::min(state.grid().dx(), state.grid().dy());
    info->cfl_warning = info->cfl > 1.0;
  }

  const double nu_s = scheme.effective_nu_split(state.fluids);
  const VectorField conv = convection(state.u);
  const VectorField f = momentum_forces(state.u, r.phi, state.fluids, scheme.capillary);
  VectorField u_new = implicit_viscous_project(explicit_velocity(state.u, conv, f, dt, nu_s), dt, nu_s);
  return SimState(std::move(u_new), std::move(r.phi), state.potential, state.fluids, state.mode, state.t + dt);
}

}  // namespace phaseflow
