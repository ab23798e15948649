#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <vector>

#include "phaseflow/grid.hpp"

namespace testing {

using phaseflow::Grid;
using phaseflow::ScalarField;
using phaseflow::VectorField;

/// Smooth trigonometric polynomial with random coefficients, modes |m| <= band
/// on each axis. Independent of the library's random field generator.
inline ScalarField trig_field(const Grid& g, int band, std::uint64_t seed, double scale = 1.0)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Term {
    int mx, my;
    double a, b;
  };
  std::vector<Term> terms;
  for (int mx = 0; mx <= band; ++mx)
    for (int my = -band; my <= band; ++my)
      if (mx > 0 || my > 0) terms.push_back({mx, my, u(rng), u(rng)});
  return ScalarField::from_function(g, [&](double x, double y) {
    double v = 0.0;
    for (const auto& t : terms) {
      const double arg = 2.0 * std::numbers::pi * (t.mx * x / g.lx() + t.my * y / g.ly());
      v += t.a * std::cos(arg) + t.b * std::sin(arg);
    }
    return scale * v;
  });
}

/// Divergence-free field from the streamfunction trig_field: (d_y s, -d_x s),
/// differentiated analytically.
inline VectorField solenoidal_field(const Grid& g, int band, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Term {
    double kx, ky, a, b;
  };
  std::vector<Term> terms;
  for (int mx = 0; mx <= band; ++mx)
    for (int my = -band; my <= band; ++my)
      if (mx > 0 || my > 0)
        terms.push_back({2.0 * std::numbers::pi * mx / g.lx(), 2.0 * std::numbers::pi * my / g.ly(), u(rng), u(rng)});
  auto comp = [&](bool want_x) {
    return ScalarField::from_function(g, [&](double x, double y) {
      double v = 0.0;
      for (const auto& t : terms) {
        const double arg = t.kx * x + t.ky * y;
        const double d = -t.a * std::sin(arg) + t.b * std::cos(arg);  // derivative of the phase
        v += want_x ? t.ky * d : -t.kx * d;
      }
      return v;
    });
  };
  return VectorField(comp(true), comp(false));
}

inline double max_diff(const ScalarField& a, const ScalarField& b)
{
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_diff(const VectorField& a, const VectorField& b)
{
  return std::max(max_diff(a.x, b.x), max_diff(a.y, b.y));
}

/// Plain sum of samples times the cell area.
inline double quad(const ScalarField& f)
{
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k];
  return s * f.grid().cell_area();
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
  const char* env = std::getenv("PHASEFLOW_TEST_TMP");
  std::filesystem::path base = env != nullptr ? env : std::filesystem::temp_directory_path() / "phaseflow_tests";
  auto dir = base / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
