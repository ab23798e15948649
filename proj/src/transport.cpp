#include "phaseflow/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phaseflow/convex_split.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"

namespace phaseflow::transport {

ScalarField advect(const ScalarField& phi, const VectorField& u, double dt)
{
  require_same_grid(phi.grid(), u.grid(), "transport::advect");
  const auto a0 = phi.values();

  ScalarField p1 = phi;
  {
    const ScalarField l = advection(u, phi);
    kernels::axpy(-dt, l.values(), p1.values());
  }
  ScalarField p2(phi.grid());
  {
    const ScalarField l = advection(u, p1);
    kernels::transform(a0, p1.values(), p2.values(), [](double a, double b) { return 0.75 * a + 0.25 * b; });
    kernels::axpy(-0.25 * dt, l.values(), p2.values());
  }
  ScalarField out(phi.grid());
  {
    const ScalarField l = advection(u, p2);
    kernels::transform(a0, p2.values(), out.values(), [](double a, double b) { return a / 3.0 + 2.0 * b / 3.0; });
    kernels::axpy(-2.0 * dt / 3.0, l.values(), out.values());
  }
  return out;
}

double grad_max(const ScalarField& phi) { return max_abs(gradient(phi)); }

SimState step(const SimState& state, const SchemeParams& scheme, StepInfo* info)
{
  const double dt = scheme.flow.dt;
  ScalarField phi_new = advect(state.phi, state.u, dt);
  const double gmax = grad_max(phi_new);
  if (scheme.grad_ceiling > 0.0 && !(gmax <= scheme.grad_ceiling)) {
    std::ostringstream os;
    os << "gradient blow-up: max|grad phi| = " << gmax << " exceeds ceiling " << scheme.grad_ceiling << " at t = "
       << state.t + dt;
    throw GradientBlowUp(os.str(), gmax);
  }
  VectorField u_new = step_velocity(state, phi_new, scheme.flow);
  if (info != nullptr) {
    *info = StepInfo{};
    info->cfl = max_abs(state.u) * dt / std::min(state.grid().dx(), state.grid().dy());
    info->cfl_warning = info->cfl > 1.0;
  }
  return SimState(std::move(u_new), std::move(phi_new), state.potential, state.fluids, state.mode, state.t + dt);
}

}  // namespace phaseflow::transport
