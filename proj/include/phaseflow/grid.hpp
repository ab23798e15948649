#pragma once

// Periodic 2D grid, real fields on it, and the spectral operators.
//
// Layout: a field sample (i, j) at x = i*lx/nx, y = j*ly/ny is stored at
// index j*nx + i (rows of constant y). Spectra hold the nonnegative-kx half
// of the real-to-complex transform, (nx/2+1) columns by ny rows.
//
// Normalization: the forward transform carries 1/(nx*ny), so a coefficient is
// the grid mean of f * exp(-i k.x). A constant field has coefficient 1 at
// k = 0 and Parseval reads mean(f^2) = sum over all modes of |c_k|^2.
//
// Odd derivatives drop the Nyquist row/column (their derivative wavenumber is
// zero); the Laplacian keeps it. Leray projection uses the same derivative
// wavenumbers as the divergence, so projected fields have exactly zero
// spectral divergence.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace phaseflow {

using Complex = std::complex<double>;

namespace detail {
struct FftPlans;
}

class Grid {
 public:
  Grid(int nx, int ny, double lx = 2.0 * std::numbers::pi, double ly = 2.0 * std::numbers::pi,
       double dealias_fraction = 2.0 / 3.0);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double dealias_fraction() const noexcept { return dealias_fraction_; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  int nkx() const noexcept { return nx_ / 2 + 1; }
  std::size_t spectral_size() const noexcept { return static_cast<std::size_t>(nkx()) * ny_; }

  double dx() const noexcept { return lx_ / nx_; }
  double dy() const noexcept { return ly_ / ny_; }
  double cell_area() const noexcept { return dx() * dy(); }
  double area() const noexcept { return lx_ * ly_; }

  double x(int i) const noexcept { return i * dx(); }
  double y(int j) const noexcept { return j * dy(); }

  /// Signed mode index of spectral row iy.
  int ky_index(int iy) const noexcept { return iy <= ny_ / 2 ? iy : iy - ny_; }
  double kx(int ix) const noexcept { return 2.0 * std::numbers::pi * ix / lx_; }
  double ky(int iy) const noexcept { return 2.0 * std::numbers::pi * ky_index(iy) / ly_; }
  /// Wavenumbers used by first derivatives (zero on the Nyquist mode).
  double dkx(int ix) const noexcept { return ix == nx_ / 2 ? 0.0 : kx(ix); }
  double dky(int iy) const noexcept { return iy == ny_ / 2 ? 0.0 : ky(iy); }
  double k_squared(int ix, int iy) const noexcept
  {
    const double a = kx(ix), b = ky(iy);
    return a * a + b * b;
  }
  /// True when mode (ix, iy) survives the dealiasing filter.
  bool retained(int ix, int iy) const noexcept;

  std::size_t spectral_index(int ix, int iy) const noexcept
  {
    return static_cast<std::size_t>(iy) * nkx() + ix;
  }

  /// Unnormalized FFTW transforms; callers use transform()/inverse_transform().
  void fft_forward(std::span<const double> in, std::span<Complex> out) const;
  void fft_inverse(std::span<const Complex> in, std::span<double> out) const;

  bool operator==(const Grid& other) const noexcept
  {
    return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_ &&
           dealias_fraction_ == other.dealias_fraction_;
  }

 private:
  int nx_, ny_;
  double lx_, ly_, dealias_fraction_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

/// Throws DimensionMismatch unless the grids agree.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double value = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  /// Samples f(x, y) at the grid points.
  static ScalarField from_function(const Grid& grid, const std::function<double(double, double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(int i, int j) noexcept { return values_[static_cast<std::size_t>(j) * grid_.nx() + i]; }
  double operator()(int i, int j) const noexcept
  {
    return values_[static_cast<std::size_t>(j) * grid_.nx() + i];
  }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField b);

struct VectorField {
  explicit VectorField(const Grid& grid) : x(grid), y(grid) {}
  VectorField(ScalarField x_component, ScalarField y_component);

  const Grid& grid() const noexcept { return x.grid(); }

  ScalarField x;
  ScalarField y;
};

class Spectrum {
 public:
  explicit Spectrum(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  Complex& at(int ix, int iy) noexcept { return coeffs_[grid_.spectral_index(ix, iy)]; }
  Complex at(int ix, int iy) const noexcept { return coeffs_[grid_.spectral_index(ix, iy)]; }

  /// Coefficient of the signed mode (mx, my), |mx| <= nx/2, |my| <= ny/2,
  /// recovered from the stored half through conjugate symmetry.
  Complex mode(int mx, int my) const;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

Spectrum transform(const ScalarField& f);
ScalarField inverse_transform(const Spectrum& s);

/// Zeroes every mode with |index| > dealias_fraction * n/2 on either axis.
Spectrum dealias(Spectrum s);
ScalarField dealias(const ScalarField& f);

VectorField gradient(const ScalarField& f);
VectorField gradient(const Spectrum& f_hat);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
/// Scalar curl dv_y/dx - dv_x/dy.
ScalarField curl(const VectorField& v);
/// Solves lap(g) = f for mean-free g; throws DomainError if |mean(f)| > 1e-12.
ScalarField inv_laplacian_zero_mean(const ScalarField& f);
VectorField leray_project(const VectorField& v);

/// Pointwise product followed by the dealiasing filter.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

double mean(const ScalarField& f);
/// Grid quadrature: sum of samples times the cell area.
double integrate(const ScalarField& f);
double l2_norm(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs(const VectorField& v);

}  // namespace phaseflow
