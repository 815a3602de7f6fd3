#include "homog/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "homog/error.hpp"
#include "homog/spectral_ops.hpp"

namespace homog {
namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool outside_two_thirds(int k, int n) { return n > 1 && 3 * std::abs(k) > n; }

void shift_to_water_level(RealVector& values, double water_level) {
  const double lo = *std::min_element(values.begin(), values.end());
  for (auto& v : values) v = (v - lo) + water_level;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCategory::InvalidArgument,
                std::string(name) + " must be positive, got " + format17(value));
  }
}

}  // namespace

std::string Provenance::describe() const {
  std::string out = generator + "(seed=" + std::to_string(seed);
  for (const auto& [key, value] : parameters) out += "," + key + "=" + format17(value);
  return out + ")";
}

double CoefficientField::min() const { return *std::min_element(values.begin(), values.end()); }

double CoefficientField::max() const { return *std::max_element(values.begin(), values.end()); }

double CoefficientField::mean() const {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double CoefficientField::harmonic_mean() const {
  double s = 0.0;
  for (double v : values) s += 1.0 / v;
  return static_cast<double>(values.size()) / s;
}

CoefficientField make_coefficient(const GridSpec& grid, RealVector values, Provenance provenance) {
  require_size(grid, values.size(), "coefficient");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw Error(ErrorCategory::DegenerateCoefficient,
                  "coefficient must be positive and finite; sample " + std::to_string(i) +
                      " is " + format17(values[i]));
    }
  }
  return CoefficientField{grid, std::move(values), std::move(provenance)};
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

CoefficientField gen_constant(const GridSpec& grid, double value) {
  require_positive(value, "constant value");
  return make_coefficient(grid, RealVector(grid.size(), value),
                          Provenance{"constant", 0, {{"value", value}}});
}

CoefficientField gen_periodic(const GridSpec& grid, double low, double high, int period_cells) {
  require_positive(low, "low");
  require_positive(high, "high");
  if (period_cells < 2 || period_cells % 2 != 0 || grid.nx() % period_cells != 0) {
    throw Error(ErrorCategory::InvalidArgument,
                "period_cells must be even and divide nx = " + std::to_string(grid.nx()) +
                    ", got " + std::to_string(period_cells));
  }
  RealVector values(grid.size());
  for (int iy = 0; iy < grid.ny(); ++iy) {
    for (int ix = 0; ix < grid.nx(); ++ix) {
      values[grid.index(ix, iy)] = (ix % period_cells) < period_cells / 2 ? low : high;
    }
  }
  return make_coefficient(grid, std::move(values),
                          Provenance{"periodic",
                                     0,
                                     {{"low", low},
                                      {"high", high},
                                      {"period_cells", static_cast<double>(period_cells)}}});
}

double apply_two_thirds_filter(const GridSpec& grid, RealVector& values) {
  const auto basis = full_projection(grid);
  SpectralVector s = forward(std::span<const double>(values), basis);
  std::size_t i = 0;
  for (int ky : basis.y().all()) {
    for (int kx : basis.x().all()) {
      if (outside_two_thirds(kx, grid.nx()) || outside_two_thirds(ky, grid.ny())) {
        s.coefficients[i] = 0.0;
      }
      ++i;
    }
  }
  double imag = 0.0;
  values = inverse_real(s, &imag);
  return imag;
}

CoefficientField gen_filtered_random(const GridSpec& grid, std::uint64_t seed, double water_level) {
  require_positive(water_level, "water_level");
  std::mt19937_64 engine(seed);
  RealVector values(grid.size());
  for (auto& v : values) v = uniform01(engine);

  const double imag = apply_two_thirds_filter(grid, values);
  if (imag > 1e-12) {
    throw Error(ErrorCategory::DegenerateCoefficient,
                "two-thirds filter left an imaginary residual of " + format17(imag));
  }
  shift_to_water_level(values, water_level);
  return make_coefficient(grid, std::move(values),
                          Provenance{"random", seed, {{"water_level", water_level}}});
}

CoefficientField gen_sparse_annulus(const GridSpec& grid, std::uint64_t seed, int k_min, int k_max,
                                    double amplitude, double water_level) {
  require_positive(amplitude, "amplitude");
  require_positive(water_level, "water_level");
  const int n_min = grid.is_1d() ? grid.nx() : std::min(grid.nx(), grid.ny());
  if (k_min <= 0 || k_max < k_min || 3 * k_max >= n_min) {
    throw Error(ErrorCategory::InvalidArgument,
                "annulus [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                    "] must satisfy 0 < k_min <= k_max < n/3 = " + format17(n_min / 3.0));
  }

  const auto basis = full_projection(grid);
  SpectralVector s = forward(std::span<const double>(RealVector(grid.size(), 0.0)), basis);
  std::mt19937_64 engine(seed);
  const int r2_min = k_min * k_min;
  const int r2_max = k_max * k_max;
  // One phase per conjugate pair, drawn for the representative with ky > 0,
  // or ky == 0 and kx > 0, in ascending (ky, kx) order.
  for (int ky : basis.y().all()) {
    for (int kx : basis.x().all()) {
      const int r2 = kx * kx + ky * ky;
      if (r2 < r2_min || r2 > r2_max) continue;
      if (!(ky > 0 || (ky == 0 && kx > 0))) continue;
      const double phase = 2.0 * std::numbers::pi * uniform01(engine);
      const Complex c = std::polar(1.0, phase);
      const std::size_t pos = grid.index(kx + grid.nx() / 2 - 1,
                                         grid.is_1d() ? 0 : ky + grid.ny() / 2 - 1);
      const std::size_t neg = grid.index(-kx + grid.nx() / 2 - 1,
                                         grid.is_1d() ? 0 : -ky + grid.ny() / 2 - 1);
      s.coefficients[pos] = c;
      s.coefficients[neg] = std::conj(c);
    }
  }

  double imag = 0.0;
  RealVector values = inverse_real(s, &imag);
  if (imag > 1e-12) {
    throw Error(ErrorCategory::DegenerateCoefficient,
                "annulus synthesis left an imaginary residual of " + format17(imag));
  }
  double ss = 0.0;
  for (double v : values) ss += v * v;
  const double rms = std::sqrt(ss / static_cast<double>(values.size()));
  for (auto& v : values) v *= amplitude / rms;

  apply_two_thirds_filter(grid, values);
  shift_to_water_level(values, water_level);
  return make_coefficient(grid, std::move(values),
                          Provenance{"annulus",
                                     seed,
                                     {{"k_min", static_cast<double>(k_min)},
                                      {"k_max", static_cast<double>(k_max)},
                                      {"amplitude", amplitude},
                                      {"water_level", water_level}}});
}

}  // namespace homog
