#include "phaseflow/random_fields.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace phaseflow {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ScalarField random_band_limited(const Grid& grid, int band, std::uint64_t seed)
{
  if (band < 1 || band >= std::min(grid.nx(), grid.ny()) / 2)
    throw std::invalid_argument("random_band_limited: band must lie in [1, min(nx, ny)/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s(grid);
  const int ny = grid.ny();
  const long b2 = static_cast<long>(band) * band;
  // kx > 0 columns are free; the kx = 0 column needs c(0, -m) = conj c(0, m)
  for (int my = -band; my <= band; ++my)
    for (int mx = 0; mx <= band; ++mx) {
      if (static_cast<long>(mx) * mx + static_cast<long>(my) * my > b2) continue;
      if (mx == 0 && my <= 0) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      const int iy = ((my % ny) + ny) % ny;
      s.at(mx, iy) = Complex(re, im);
      if (mx == 0) s.at(0, ((-my % ny) + ny) % ny) = Complex(re, -im);
    }
  // inverse_transform is unnormalized, so coefficients map to sample values
  return inverse_transform(s);
}

}  // namespace phaseflow
