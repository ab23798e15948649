#include "phaseflow/convex_split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"

namespace phaseflow {

namespace {

constexpr double kIterateBound = 1.0 - 1e-14;

double span_mean(std::span<const double> x) { return kernels::sum(x) / static_cast<double>(x.size()); }

// Spectral scratch for the solver; all transforms are unnormalized FFTW
// calls with the 1/N applied in the diagonal multipliers.
struct Workspace {
  explicit Workspace(const Grid& g)
      : grid(g), hat(g.spectral_size()), k2(g.spectral_size()), tmp(g.size())
  {
    const int nkx = g.nkx(), ny = g.ny();
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nkx; ++ix) k2[g.spectral_index(ix, iy)] = g.k_squared(ix, iy);
  }

  // out = lap(in)
  void laplacian(std::span<const double> in, std::span<double> out)
  {
    grid.fft_forward(in, hat);
    const double norm = 1.0 / static_cast<double>(grid.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(hat.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) hat[k] *= -k2[k] * norm;
    grid.fft_inverse(hat, out);
  }

  // out = (a - dtg lap)^{-1} in on mean-free fields, zero mean component
  void precondition(std::span<const double> in, std::span<double> out, double a, double dtg)
  {
    grid.fft_forward(in, hat);
    const double norm = 1.0 / static_cast<double>(grid.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(hat.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) hat[k] *= norm / (a + dtg * k2[k]);
    hat[0] = 0.0;
    grid.fft_inverse(hat, out);
  }

  Grid grid;
  std::vector<Complex> hat;
  std::vector<double> k2;
  std::vector<double> tmp;
};

}  // namespace

ConvexSplitResult solve_convex_split(const ScalarField& rhs, const ScalarField& guess, double target_mean, double dtg,
                                     const PotentialParams& potential, PotentialMode mode,
                                     const ConvexSplitOptions& options)
{
  require_same_grid(rhs.grid(), guess.grid(), "solve_convex_split");
  const Grid& g = rhs.grid();
  const std::size_t n = g.size();
  const bool singular = mode == PotentialMode::singular;
  Workspace ws(g);
  ScalarField phi = guess;
  std::vector<double> G(n), r(n), z(n), p(n), Az(n), Ap(n), delta(n), d2(n), trial(n);
  auto ph = phi.values();
  auto rh = rhs.values();
  kernels::shift(ph, target_mean - span_mean(ph));
  if (singular && !(kernels::max_abs(ph) < kIterateBound))
    throw StepFailure("solve_convex_split: initial iterate outside (-1, 1)", 0.0);

  ConvexSplitResult out{phi, 0.0, 0, 0, 0.0};
  double g_mean = 0.0;

  auto residual = [&]() {
    ws.laplacian(ph, ws.tmp);
    kernels::transform(ph, ws.tmp, G, [&](double v, double lap) { return v - dtg * lap + dtg * convex_d1(v, potential, mode); });
    kernels::axpy(-1.0, rh, G);
    g_mean = span_mean(G);
    kernels::transform(G, r, [g_mean](double v) { return g_mean - v; });
    return kernels::max_abs(r);
  };

  double res = residual();
  int it = 0;
  while (res > options.tol) {
    if (it >= options.max_iter) {
      std::ostringstream os;
      os << "Newton did not converge in " << options.max_iter << " iterations (residual " << res << ")";
      throw StepFailure(os.str(), res);
    }
    ++it;

    kernels::transform(ph, d2, [&](double v) { return dtg * convex_d2(v, potential, mode); });
    const double a = 1.0 + span_mean(d2);

    // PCG on mean-free fields. Since (a - dtg lap) z = r exactly in Fourier
    // space, A z = r + (1 - a) z + dtg F'' z needs no extra transform.
    std::fill(delta.begin(), delta.end(), 0.0);
    const double r0 = std::sqrt(kernels::dot(r, r));
    const double eta = std::clamp(res, 1e-12, 1e-3);
    double rz_old = 0.0;
    for (int k = 0; k < options.max_cg_iter; ++k) {
      ws.precondition(r, z, a, dtg);
      const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < sn; ++i) Az[i] = r[i] + (1.0 - a) * z[i] + d2[i] * z[i];
      const double rz = kernels::dot(r, z);
      if (k == 0) {
        p = z;
        Ap = Az;
      } else {
        const double beta = rz / rz_old;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < sn; ++i) {
          p[i] = z[i] + beta * p[i];
          Ap[i] = Az[i] + beta * Ap[i];
        }
      }
      rz_old = rz;
      const double ap_mean = span_mean(Ap);
      kernels::shift(Ap, -ap_mean);
      const double pAp = kernels::dot(p, Ap);
      if (!(pAp > 0.0)) break;
      const double alpha = rz / pAp;
      kernels::axpy(alpha, p, delta);
      kernels::axpy(-alpha, Ap, r);
      ++out.cg_iterations;
      if (std::sqrt(kernels::dot(r, r)) <= eta * r0) break;
    }

    double lambda = 1.0;
    for (;;) {
      kernels::transform(ph, delta, trial, [lambda](double v, double d) { return v + lambda * d; });
      if (!singular || kernels::max_abs(trial) < kIterateBound) break;
      lambda *= 0.5;
      if (lambda < 1e-30) throw StepFailure("solve_convex_split: step halving stalled at the singular boundary", res);
    }
    std::copy(trial.begin(), trial.end(), ph.begin());
    res = residual();
  }

  out.xi = g_mean / dtg;
  kernels::shift(ph, target_mean - span_mean(ph));
  if (singular && !(kernels::max_abs(ph) < kIterateBound))
    throw StepFailure("solve_convex_split: mean correction left (-1, 1)", res);
  out.phi = std::move(phi);
  out.iterations = it;
  out.residual = res;
  return out;
}

ScalarField advection(const VectorField& u, const Spectrum& f_hat)
{
  require_same_grid(u.grid(), f_hat.grid(), "advection");
  const VectorField gf = gradient(f_hat);
  ScalarField prod(u.grid());
  kernels::transform(u.x.values(), gf.x.values(), prod.values(), [](double a, double b) { return a * b; });
  auto pv = prod.values();
  const auto uy = u.y.values();
  const auto gy = gf.y.values();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pv.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) pv[i] += uy[i] * gy[i];
  return dealias(prod);
}

ScalarField advection(const VectorField& u, const ScalarField& f) { return advection(u, transform(f)); }

}  // namespace phaseflow
