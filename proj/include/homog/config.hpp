#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homog/coefficients.hpp"
#include "homog/homogenize2d.hpp"
#include "homog/solvers.hpp"

namespace homog {

enum class ExperimentKind { Sweep1D, Sweep2D, Kernel, Panels2D };
enum class GeneratorKind { Random, Periodic, Annulus, Constant };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(GeneratorKind kind);

/// Settings of one experiment run. Read from a flat `key = value` file:
///
///   # comment
///   experiment   = sweep1d | sweep2d | kernel | panels2d
///   nx, ny       = grid size (even, >= 4); 1D runs ignore ny
///   generator    = random | periodic | annulus | constant
///   seed         = unsigned integer
///   water_level  = minimum of random and annulus fields
///   low, high, period_cells = periodic two-phase values and period
///   k_min, k_max, amplitude = annulus shell and RMS amplitude
///   value        = constant coefficient
///   bandwidths   = comma-separated percentages of Nyquist
///   cutoff       = single integer cutoff; replaces `bandwidths`
///   tol          = finite-difference residual tolerance
///   compare      = full | coarse
///   fine_dim_cap = largest dense fine block in 2D
///   out          = output directory
///
/// Unknown or repeated keys are rejected.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Sweep1D;
  std::optional<int> nx;
  std::optional<int> ny;
  GeneratorKind generator = GeneratorKind::Random;
  std::uint64_t seed = 42;
  double water_level = 0.1;
  double low = 1.0;
  double high = 4.0;
  std::optional<int> period_cells;
  int k_min = 8;
  int k_max = 12;
  double amplitude = 1.0;
  double value = 1.0;
  std::vector<double> bandwidths;
  std::optional<int> cutoff;
  double tol = 1e-10;
  CompareMode compare = CompareMode::Full;
  std::size_t fine_dim_cap = kDefaultFineDimensionCap;
  std::filesystem::path out = "out";

  bool is_2d() const noexcept {
    return experiment == ExperimentKind::Sweep2D || experiment == ExperimentKind::Panels2D;
  }
  /// Grid with the per-kind defaults: 256 in 1D, 64 x 64 in 2D.
  GridSpec grid() const;
};

/// One scheduled point: percentage of Nyquist and the cutoff it maps to.
struct BandwidthPoint {
  double percent = 0.0;
  int cutoff = 0;
};

/// Default schedules: {0, 5, ..., 60} in 1D and {0, 10, ..., 60} in 2D.
std::vector<double> default_bandwidths(ExperimentKind kind);

/// cutoff = floor(percent / 100 * n / 2). Throws InvalidCutoff unless
/// 0 <= percent < 200/3 and the cutoff satisfies 3 * cutoff <= n.
int cutoff_for_bandwidth(double percent, int n);

/// Validated schedule for `config`, in the configured order. The whole
/// schedule is checked before anything is computed. In 2D every axis uses
/// the same cutoff, checked against the smaller axis.
std::vector<BandwidthPoint> bandwidth_schedule(const ExperimentConfig& config);

/// Throws Config on syntax errors, unknown keys or invalid values.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Coefficient for the configured generator on config.grid().
CoefficientField make_config_coefficient(const ExperimentConfig& config);

}  // namespace homog
