#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "homog/coefficients.hpp"
#include "homog/config.hpp"
#include "homog/homogenize1d.hpp"
#include "homog/homogenize2d.hpp"
#include "homog/solvers.hpp"

namespace homog {

enum class Method { Homogenized, RawFiltered };
std::string_view to_string(Method method);

/// One (bandwidth, method) point of an error sweep. Errors are empty when
/// the effective coefficient could not be used; `flags` then says why.
struct SweepRecord {
  double bandwidth_pct = 0.0;
  int cutoff = 0;
  Method method = Method::Homogenized;
  std::optional<double> l1{};
  std::optional<double> l2{};
  /// Short machine-readable markers, e.g. "nonpositive_coefficient".
  std::vector<std::string> flags{};
  /// n / k_p (1D) or N / (k_px k_py) (2D) for the homogenized method, 1 for raw.
  double normalization = 1.0;
  /// Relative residual of the solve that produced the compared solution.
  double solver_residual = 0.0;
  /// Largest imaginary part discarded when the coefficient was made real.
  double imag_residual = 0.0;
  /// Reciprocal condition estimate of the fine block (1 for raw filtering).
  double rcond = 1.0;
  /// Smallest value of the effective coefficient (determinant in 2D).
  double min_value = 0.0;
};

struct SweepResult {
  CoefficientField coefficient;
  SolveResult reference;
  std::vector<SweepRecord> records;
};

/// Receives progress and wall-clock lines; never part of the CSV output.
using RunLog = std::ostream*;

/// Homogenized and raw-filtered errors against the exact solution with
/// u(0) = 0, u(1) = 1, for every scheduled bandwidth.
SweepResult run_sweep_1d(const ExperimentConfig& config, RunLog log = nullptr);

/// Same on a 2D grid: reference and both models solved by finite
/// differences with u = 1 on the left, u = 0 on the right and zero Neumann
/// on the top and bottom edges.
SweepResult run_sweep_2d(const ExperimentConfig& config, RunLog log = nullptr);

struct KernelRecord {
  double bandwidth_pct = 0.0;
  int cutoff = 0;
  /// True for the closing full-band point (every mode retained).
  bool full_band = false;
  HomogenizedKernel kernel;
  double offdiag_mass = 0.0;
};

struct KernelSweep {
  CoefficientField coefficient;
  /// Scheduled bandwidths followed by one full-band reference point.
  std::vector<KernelRecord> records;
};

KernelSweep run_kernel_sweep(const ExperimentConfig& config, RunLog log = nullptr);

/// Fields behind the 2D solution-difference panels at one bandwidth.
struct Panels2D {
  CoefficientField coefficient;
  BandwidthPoint point;
  TensorCoefficient2D homogenized;
  /// P*P a, present only when it stays strictly positive.
  std::optional<CoefficientField> filtered;
  RealVector filtered_values;
  SolveResult exact;
  std::optional<SolveResult> homogenized_solution;
  std::optional<SolveResult> filtered_solution;
  /// Node-wise u_model - u_exact (zeros when the model was unusable).
  RealVector diff_homogenized;
  RealVector diff_filtered;
  std::vector<SweepRecord> records;
};

/// Uses the first scheduled point.
Panels2D run_panels_2d(const ExperimentConfig& config, RunLog log = nullptr);

/// Header `bandwidth_pct,method,l1,l2,flags` followed by provenance columns
/// `cutoff,normalization,solver_residual,imag_residual,rcond,min_value,
/// generator,seed`. Empty l1/l2 fields mean null.
std::string sweep_csv(const std::vector<SweepRecord>& records, const Provenance& provenance);

/// `bandwidth_pct,cutoff,full_band,offdiag_mass,imag_residual,hermitian_residual,
/// solve_residual,rcond,generator,seed`.
std::string kernel_mass_csv(const KernelSweep& sweep);

/// Runs `config.experiment` and writes its CSV files into config.out, plus
/// a run.log with timings. Returns the paths of the CSV files written.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

/// File-writing pieces of run_experiment, exposed for the CLI.
std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_kernel_sweep(const KernelSweep& sweep,
                                                      const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_panels(const Panels2D& panels,
                                                const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_tensor(const TensorCoefficient2D& tensor,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix);

}  // namespace homog
