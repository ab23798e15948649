#include "phaseflow/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"

namespace phaseflow {

namespace detail {

struct FftPlans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

namespace {

std::mutex& planner_mutex()
{
  static std::mutex m;
  return m;
}

// FFTW_ESTIMATE keeps plan selection (and therefore rounding) reproducible
// between runs; FFTW_UNALIGNED lets us execute on std::vector storage.
std::shared_ptr<const FftPlans> plans_for(int nx, int ny)
{
  static std::map<std::pair<int, int>, std::shared_ptr<const FftPlans>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find({nx, ny});
  if (it != cache.end()) return it->second;
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const std::size_t nc = static_cast<std::size_t>(nx / 2 + 1) * ny;
  std::vector<double> real(n);
  std::vector<Complex> cplx(nc);
  auto plans = std::make_shared<FftPlans>();
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->r2c = fftw_plan_dft_r2c_2d(ny, nx, real.data(), reinterpret_cast<fftw_complex*>(cplx.data()), flags);
  plans->c2r = fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(cplx.data()), real.data(), flags);
  if (plans->r2c == nullptr || plans->c2r == nullptr) throw std::runtime_error("FFTW planning failed");
  cache.emplace(std::make_pair(nx, ny), plans);
  return plans;
}

}  // namespace
}  // namespace detail

Grid::Grid(int nx, int ny, double lx, double ly, double dealias_fraction)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), dealias_fraction_(dealias_fraction)
{
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
    throw std::invalid_argument("grid: nx and ny must be even and >= 8 (got " + std::to_string(nx) + "x" +
                                std::to_string(ny) + ")");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw std::invalid_argument("grid: domain lengths must be positive and finite");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("grid: dealias_fraction must lie in (0, 1]");
  plans_ = detail::plans_for(nx, ny);
}

bool Grid::retained(int ix, int iy) const noexcept
{
  const double cut_x = dealias_fraction_ * (nx_ / 2);
  const double cut_y = dealias_fraction_ * (ny_ / 2);
  return ix <= cut_x && std::abs(ky_index(iy)) <= cut_y;
}

void Grid::fft_forward(std::span<const double> in, std::span<Complex> out) const
{
  // out-of-place r2c leaves the input untouched
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
}

void Grid::fft_inverse(std::span<const Complex> in, std::span<double> out) const
{
  std::vector<Complex> scratch(in.begin(), in.end());  // c2r overwrites its input
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

void require_same_grid(const Grid& a, const Grid& b, const char* what)
{
  if (!(a == b)) throw DimensionMismatch(std::string(what) + ": operands live on different grids");
}

// ---------------------------------------------------------------- fields

ScalarField::ScalarField(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values))
{
  if (values_.size() != grid_.size())
    throw DimensionMismatch("field: expected " + std::to_string(grid_.size()) + " samples, got " +
                            std::to_string(values_.size()));
}

ScalarField ScalarField::from_function(const Grid& grid, const std::function<double(double, double)>& f)
{
  ScalarField out(grid);
  const int nx = grid.nx(), ny = grid.ny();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out(i, j) = f(grid.x(i), grid.y(j));
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o)
{
  require_same_grid(grid_, o.grid_, "operator+=");
  kernels::axpy(1.0, o.values(), values());
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o)
{
  require_same_grid(grid_, o.grid_, "operator-=");
  kernels::axpy(-1.0, o.values(), values());
  return *this;
}

ScalarField& ScalarField::operator*=(double a)
{
  kernels::transform(values(), values(), [a](double v) { return a * v; });
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField b) { return b *= a; }

VectorField::VectorField(ScalarField x_component, ScalarField y_component)
    : x(std::move(x_component)), y(std::move(y_component))
{
  require_same_grid(x.grid(), y.grid(), "VectorField");
}

Spectrum::Spectrum(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size(), Complex(0.0, 0.0)) {}

Complex Spectrum::mode(int mx, int my) const
{
  const int nx = grid_.nx(), ny = grid_.ny();
  if (std::abs(mx) > nx / 2 || std::abs(my) > ny / 2) throw std::out_of_range("Spectrum::mode: index out of range");
  auto row = [ny](int m) { return ((m % ny) + ny) % ny; };
  if (mx >= 0) return at(mx, row(my));
  return std::conj(at(-mx, row(-my)));
}

// ---------------------------------------------------------------- transforms

Spectrum transform(const ScalarField& f)
{
  const Grid& g = f.grid();
  Spectrum s(g);
  g.fft_forward(f.values(), s.coeffs());
  const double norm = 1.0 / static_cast<double>(g.size());
  auto c = s.coeffs();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) c[k] *= norm;
  return s;
}

ScalarField inverse_transform(const Spectrum& s)
{
  ScalarField f(s.grid());
  s.grid().fft_inverse(s.coeffs(), f.values());
  return f;
}

namespace {

// Applies out(ix,iy) = op(ix, iy, in(ix,iy)) over the stored half spectrum.
template <class Op>
Spectrum map_spectrum(const Spectrum& in, Op op)
{
  const Grid& g = in.grid();
  Spectrum out(g);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) out.at(ix, iy) = op(ix, iy, in.at(ix, iy));
  return out;
}

constexpr Complex kI(0.0, 1.0);

}  // namespace

Spectrum dealias(Spectrum s)
{
  const Grid& g = s.grid();
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix)
      if (!g.retained(ix, iy)) s.at(ix, iy) = 0.0;
  return s;
}

ScalarField dealias(const ScalarField& f) { return inverse_transform(dealias(transform(f))); }

VectorField gradient(const Spectrum& f_hat)
{
  const Grid& g = f_hat.grid();
  Spectrum gx = map_spectrum(f_hat, [&g](int ix, int, Complex c) { return kI * g.dkx(ix) * c; });
  Spectrum gy = map_spectrum(f_hat, [&g](int, int iy, Complex c) { return kI * g.dky(iy) * c; });
  return VectorField(inverse_transform(gx), inverse_transform(gy));
}

VectorField gradient(const ScalarField& f) { return gradient(transform(f)); }

ScalarField divergence(const VectorField& v)
{
  const Grid& g = v.grid();
  const Spectrum vx = transform(v.x);
  const Spectrum vy = transform(v.y);
  Spectrum d(g);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) d.at(ix, iy) = kI * (g.dkx(ix) * vx.at(ix, iy) + g.dky(iy) * vy.at(ix, iy));
  return inverse_transform(d);
}

ScalarField curl(const VectorField& v)
{
  const Grid& g = v.grid();
  const Spectrum vx = transform(v.x);
  const Spectrum vy = transform(v.y);
  Spectrum c(g);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) c.at(ix, iy) = kI * (g.dkx(ix) * vy.at(ix, iy) - g.dky(iy) * vx.at(ix, iy));
  return inverse_transform(c);
}

ScalarField laplacian(const ScalarField& f)
{
  const Grid& g = f.grid();
  return inverse_transform(map_spectrum(transform(f), [&g](int ix, int iy, Complex c) { return -g.k_squared(ix, iy) * c; }));
}

ScalarField inv_laplacian_zero_mean(const ScalarField& f)
{
  const double m = mean(f);
  if (std::abs(m) > 1e-12)
    throw DomainError("inv_laplacian_zero_mean: input mean " + std::to_string(m) + " is not zero");
  const Grid& g = f.grid();
  return inverse_transform(map_spectrum(transform(f), [&g](int ix, int iy, Complex c) {
    const double k2 = g.k_squared(ix, iy);
    return k2 == 0.0 ? Complex(0.0, 0.0) : -c / k2;
  }));
}

VectorField leray_project(const VectorField& v)
{
  const Grid& g = v.grid();
  Spectrum vx = transform(v.x);
  Spectrum vy = transform(v.y);
  const int nkx = g.nkx(), ny = g.ny();
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nkx; ++ix) {
      const double kx = g.dkx(ix), ky = g.dky(iy);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const Complex a = vx.at(ix, iy), b = vy.at(ix, iy);
      const Complex kdotv = (kx * a + ky * b) / k2;
      vx.at(ix, iy) = a - kx * kdotv;
      vy.at(ix, iy) = b - ky * kdotv;
    }
  return VectorField(inverse_transform(vx), inverse_transform(vy));
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b)
{
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  ScalarField p(a.grid());
  kernels::multiply(a.values(), b.values(), p.values());
  return dealias(p);
}

double mean(const ScalarField& f) { return kernels::sum(f.values()) / static_cast<double>(f.size()); }

double integrate(const ScalarField& f) { return kernels::sum(f.values()) * f.grid().cell_area(); }

double l2_norm(const ScalarField& f) { return std::sqrt(kernels::dot(f.values(), f.values()) * f.grid().cell_area()); }

double max_abs(const ScalarField& f) { return kernels::max_abs(f.values()); }

double max_abs(const VectorField& v)
{
  ScalarField mag(v.grid());
  kernels::hypot2(v.x.values(), v.y.values(), mag.values());
  return kernels::max_value(mag.values());
}

}  // namespace phaseflow
