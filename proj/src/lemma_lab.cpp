#include "phaseflow/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "phaseflow/kernels.hpp"
#include "phaseflow/random_fields.hpp"

namespace phaseflow {

// ---------------------------------------------------------------- spectral norms

namespace {

// Weight of a stored half-spectrum column in a sum over all modes.
double column_weight(const Grid& g, int ix) { return (ix == 0 || ix == g.nx() / 2) ? 1.0 : 2.0; }

}  // namespace

double sobolev_norm(const ScalarField& f, double s)
{
  const Grid& g = f.grid();
  const Spectrum c = transform(f);
  double acc = 0.0;
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix)
      acc += column_weight(g, ix) * std::pow(1.0 + g.k_squared(ix, iy), s) * std::norm(c.at(ix, iy));
  return std::sqrt(g.area() * acc);
}

double lp_norm(const ScalarField& f, double p)
{
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be at least 1");
  const auto v = f.values();
  const double s = kernels::reduce_sum(v.size(), [&](std::size_t i) { return std::pow(std::abs(v[i]), p); });
  return std::pow(s * f.grid().cell_area(), 1.0 / p);
}

DyadicDecomposition dyadic_decompose(const ScalarField& f, int n_shells)
{
  if (n_shells < 0) throw std::invalid_argument("dyadic_decompose: N must be non-negative");
  const Grid& g = f.grid();
  const Spectrum c = transform(f);
  const int count = n_shells + 1;
  std::vector<Spectrum> parts(static_cast<std::size_t>(count) + 1, Spectrum(g));
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = 0; ix < g.nkx(); ++ix) {
      // shell index floor(log sqrt(1 + |k|^2)), clipped to the tail slot
      const double lam = 0.5 * std::log1p(g.k_squared(ix, iy));
      int n = static_cast<int>(std::floor(lam));
      const double root = std::sqrt(1.0 + g.k_squared(ix, iy));
      if (std::exp(static_cast<double>(n + 1)) <= root) ++n;
      if (n > 0 && std::exp(static_cast<double>(n)) > root) --n;
      parts[static_cast<std::size_t>(std::min(n, count))].at(ix, iy) = c.at(ix, iy);
    }
  DyadicDecomposition out{{}, inverse_transform(parts.back())};
  for (int n = 0; n < count; ++n) out.shells.push_back(inverse_transform(parts[static_cast<std::size_t>(n)]));
  return out;
}

// ---------------------------------------------------------------- product estimate

ProductEstimateSample product_estimate(const ScalarField& f, const ScalarField& g, double p)
{
  require_same_grid(f.grid(), g.grid(), "product_estimate");
  if (!(p > 2.0)) throw std::invalid_argument("product_estimate: p must exceed 2");
  ProductEstimateSample s;
  s.p = p;
  s.l2_g = l2_norm(g);
  if (!(s.l2_g > 0.0)) throw std::invalid_argument("product_estimate: g vanishes identically");
  ScalarField fg(f.grid());
  kernels::multiply(f.values(), g.values(), fg.values());
  s.lhs = l2_norm(fg);
  s.h1_f = sobolev_norm(f, 1.0);
  s.lp_g = lp_norm(g, p);
  const double area = f.grid().area();
  s.log_arg = std::numbers::e * std::pow(area, (p - 2.0) / (2.0 * p)) * s.lp_g / s.l2_g;
  s.rhs_core = std::sqrt(p / (p - 2.0)) * s.h1_f * s.l2_g * std::sqrt(std::log(s.log_arg));
  s.ratio = s.lhs / s.rhs_core;
  return s;
}

EstimateReport verify_estimate(const Grid& grid, int samples, double p, std::uint64_t seed,
                               const EstimateOptions& options)
{
  if (samples < 1) throw std::invalid_argument("verify_estimate: samples must be at least 1");
  if (!(p > 2.0)) throw std::invalid_argument("verify_estimate: p must exceed 2");
  EstimateReport rep;
  rep.p = p;
  rep.samples.resize(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < samples; ++k) {
    const std::uint64_t kk = static_cast<std::uint64_t>(k);
    const ScalarField f = random_band_limited(grid, options.band, derive_seed(seed, 2 * kk));
    const ScalarField g = random_band_limited(grid, options.band, derive_seed(seed, 2 * kk + 1));
    ProductEstimateSample s = product_estimate(f, g, p);
    s.seed = seed;
    rep.samples[static_cast<std::size_t>(k)] = s;
  }
  for (const auto& s : rep.samples) {
    rep.max_ratio = std::max(rep.max_ratio, s.ratio);
    rep.fitted_constant = std::max(rep.fitted_constant, s.lhs / (s.h1_f * s.l2_g * std::sqrt(std::log(s.log_arg))));
  }
  rep.pass = rep.max_ratio <= options.c_cap;
  return rep;
}

// ---------------------------------------------------------------- sharpness pair

namespace {

struct GaussRule {
  std::vector<double> x, w;  // on [0, 1]
};

GaussRule gauss_legendre(int n)
{
  GaussRule r;
  for (int i = 1; i <= n; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x.push_back(0.5 * (1.0 - z));
    r.w.push_back(1.0 / ((1.0 - z * z) * dp * dp));
  }
  return r;
}

struct Quadtree {
  const std::function<double(double)>& h;
  double r0, R, grading;
  double h_min_inner, h_min_outer;
  GaussRule rule;

  double cell(double x0, double y0, double size) const
  {
    const double rmin = std::hypot(x0, y0);
    const double rmax = std::hypot(x0 + size, y0 + size);
    if (rmin >= R) return 0.0;
    if (rmax <= r0) return size * size * h(0.5 * r0);
    const bool cuts_inner = rmin < r0 && r0 < rmax;
    const bool cuts_outer = rmin < R && R < rmax;
    bool refine = false;
    if (cuts_inner && size > h_min_inner) refine = true;
    if (cuts_outer && size > h_min_outer) refine = true;
    if (!cuts_inner && !cuts_outer && size > grading * rmin) refine = true;
    if (refine) {
      const double s = 0.5 * size;
      return cell(x0, y0, s) + cell(x0 + s, y0, s) + cell(x0, y0 + s, s) + cell(x0 + s, y0 + s, s);
    }
    double acc = 0.0;
    const std::size_t n = rule.x.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double r = std::hypot(x0 + size * rule.x[a], y0 + size * rule.x[b]);
        if (r < R) acc += rule.w[a] * rule.w[b] * h(r);
      }
    return acc * size * size;
  }
};

}  // namespace

double disk_integral(const std::function<double(double)>& h, double r0, const CounterexampleOptions& options)
{
  const double R = options.outer_radius;
  if (!(r0 > 0.0 && r0 < R)) throw std::invalid_argument("disk_integral: need 0 < r0 < outer radius");
  Quadtree q{h, r0, R, options.grading, r0 / 64.0, R * 1e-4, gauss_legendre(options.gauss_points)};
  return 4.0 * q.cell(0.0, 0.0, R);
}

CounterexampleReport counterexample_probe(double alpha, double beta, const CounterexampleOptions& options)
{
  CounterexampleReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  std::ostringstream msg;
  if (!(alpha > 0.5 && alpha < 1.0)) msg << "alpha must lie in (1/2, 1); ";
  if (!(alpha - beta < 0.5)) msg << "alpha - beta must be below 1/2 for f g to leave L2; ";
  rep.message = msg.str();
  rep.admissible = rep.message.empty();
  if (!(options.outer_radius > 0.0 && options.outer_radius < 1.0))
    throw std::invalid_argument("counterexample_probe: outer radius must lie in (0, 1)");
  if (!(options.p > 2.0)) throw std::invalid_argument("counterexample_probe: p must exceed 2");

  for (double r0 : options.r0_ladder) {
    if (!(r0 > 0.0 && r0 < options.outer_radius))
      throw std::invalid_argument("counterexample_probe: every r0 must lie in (0, outer radius)");
    auto L = [r0](double r) { return std::log(1.0 / std::max(r, r0)); };
    auto g = [&](double r) { return 1.0 / (std::max(r, r0) * std::pow(L(r), alpha)); };
    auto f = [&](double r) { return std::pow(L(r), beta); };
    auto grad_f_sq = [&](double r) {
      if (r < r0) return 0.0;
      const double d = beta * std::pow(L(r), beta - 1.0) / r;
      return d * d;
    };
    CounterexampleRow row;
    row.r0 = r0;
    row.l2_g = std::sqrt(disk_integral([&](double r) { return g(r) * g(r); }, r0, options));
    row.lp_g = std::pow(disk_integral([&](double r) { return std::pow(g(r), options.p); }, r0, options), 1.0 / options.p);
    const double f2 = disk_integral([&](double r) { return f(r) * f(r); }, r0, options);
    row.l2_f = std::sqrt(f2);
    row.h1_f = std::sqrt(f2 + disk_integral(grad_f_sq, r0, options));
    row.l2_fg = std::sqrt(disk_integral([&](double r) { const double v = f(r) * g(r); return v * v; }, r0, options));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace phaseflow
