#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "homog/grid.hpp"

namespace homog {

/// Where a coefficient came from: enough to regenerate it bit for bit.
struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> parameters;

  /// "generator(seed=..,key=value,..)" with 17 significant digits.
  std::string describe() const;
};

/// Strictly positive scalar coefficient a(x) or a(x, y) sampled on a grid.
struct CoefficientField {
  GridSpec grid;
  RealVector values;
  Provenance provenance;

  double min() const;
  double max() const;
  double mean() const;
  double harmonic_mean() const;
};

/// Wraps raw samples; throws DegenerateCoefficient if any value is <= 0
/// (or not finite) and Dimension on a size mismatch.
CoefficientField make_coefficient(const GridSpec& grid, RealVector values,
                                  Provenance provenance = {});

/// Samples from the seeded generator used by every random coefficient:
/// std::mt19937_64 with the top 53 bits of each draw scaled by 2^-53, so the
/// stream is identical on every platform.
double uniform01(std::mt19937_64& engine);

CoefficientField gen_constant(const GridSpec& grid, double value);

/// Equal-measure square wave along x: `low` on the first half of each period
/// of `period_cells` samples, `high` on the second half. Constant along y.
CoefficientField gen_periodic(const GridSpec& grid, double low, double high, int period_cells);

/// Uniform [0, 1) samples, every mode with 3|k| > n on any axis zeroed
/// (two-thirds rule), then shifted so min == water_level.
CoefficientField gen_filtered_random(const GridSpec& grid, std::uint64_t seed,
                                     double water_level = 0.1);

/// Power only on the radial shell k_min <= |(kx, ky)| <= k_max, with seeded
/// random phases. The mean-free part is scaled to RMS `amplitude`, and the
/// dc level is set so min == water_level.
CoefficientField gen_sparse_annulus(const GridSpec& grid, std::uint64_t seed, int k_min,
                                    int k_max, double amplitude, double water_level = 0.1);

/// Zeroes every Fourier mode with 3|k| > n along any axis of a real field.
/// Returns the largest imaginary part discarded on the way back.
double apply_two_thirds_filter(const GridSpec& grid, RealVector& values);

}  // namespace homog
