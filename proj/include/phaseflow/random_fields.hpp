#pragma once

// Seeded random band-limited fields. Fourier coefficients of every mode with
// integer wave vector |m| <= band (m != 0) are independent standard normals in
// real and imaginary part; all other modes are zero. The result is mean-free.

#include <cstdint>

#include "phaseflow/grid.hpp"

namespace phaseflow {

/// SplitMix64 finalizer; derives independent seeds for numbered samples.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Throws std::invalid_argument unless 1 <= band < min(nx, ny) / 2.
ScalarField random_band_limited(const Grid& grid, int band, std::uint64_t seed);

}  // namespace phaseflow
