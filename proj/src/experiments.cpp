#include "homog/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <utility>

#include "homog/error.hpp"
#include "homog/grid_io.hpp"

namespace homog {
namespace {

using Clock = std::chrono::steady_clock;

void log_line(RunLog log, const std::string& text) {
  if (log != nullptr) *log << text << '\n' << std::flush;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string point_label(const BandwidthPoint& p) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "bandwidth %g%% (cutoff %d)", p.percent, p.cutoff);
  return buffer;
}

void fill_errors(SweepRecord& record, const SolveResult& reference, const SolveResult& model,
                 const ExperimentConfig& config, const ProjectionBasis& basis) {
  const ErrorPair e = coarse_compare(reference, model, config.compare, &basis);
  record.l1 = e.l1;
  record.l2 = e.l2;
  record.solver_residual = model.residual;
  if (!model.converged) record.flags.emplace_back("not_converged");
}

bool is_recoverable(const Error& e) {
  return e.category() == ErrorCategory::DegenerateCoefficient ||
         e.category() == ErrorCategory::IllConditioned;
}

std::string flag_for(const Error& e) {
  return e.category() == ErrorCategory::IllConditioned ? "ill_conditioned"
                                                        : "nonpositive_coefficient";
}

double min_diagonal(const TensorCoefficient2D& t) {
  const double xx = *std::min_element(t.xx.begin(), t.xx.end());
  const double yy = *std::min_element(t.yy.begin(), t.yy.end());
  return std::min(xx, yy);
}

SweepRecord homogenized_record_1d(const CoefficientField& a, const BandwidthPoint& point,
                                  const ProjectionBasis& basis, const SolveResult& reference,
                                  const ExperimentConfig& config) {
  SweepRecord record{.bandwidth_pct = point.percent, .cutoff = point.cutoff,
                     .method = Method::Homogenized};
  try {
    const HomogenizedKernel kernel = homogenize_kernel_1d(a, basis);
    const HomogenizedCoefficient1D h = extract_diagonal(kernel);
    record.normalization = h.normalization;
    record.imag_residual = h.imag_residual;
    record.rcond = kernel.rcond;
    record.min_value = h.min_value;
    if (!(h.min_value > 0.0)) {
      record.flags.emplace_back("nonpositive_coefficient");
      return record;
    }
    fill_errors(record, reference, exact_diffusion_1d(a.grid, h.values, 0.0, 1.0), config, basis);
  } catch (const Error& e) {
    if (!is_recoverable(e)) throw;
    record.flags.push_back(flag_for(e));
  }
  return record;
}

SweepRecord raw_record_1d(const CoefficientField& a, const BandwidthPoint& point,
                          const ProjectionBasis& basis, const SolveResult& reference,
                          const ExperimentConfig& config) {
  SweepRecord record{.bandwidth_pct = point.percent, .cutoff = point.cutoff,
                     .method = Method::RawFiltered};
  const RealVector filtered = coarse_project(a.values, basis);
  record.min_value = *std::min_element(filtered.begin(), filtered.end());
  try {
    const CoefficientField f = raw_filter_1d(a, basis);
    fill_errors(record, reference, exact_diffusion_1d(f, 0.0, 1.0), config, basis);
  } catch (const Error& e) {
    if (!is_recoverable(e)) throw;
    record.flags.push_back(flag_for(e));
  }
  return record;
}

struct ModelSolve2D {
  SweepRecord record;
  std::optional<SolveResult> solution;
};

ModelSolve2D solve_tensor_model(SweepRecord record, const TensorCoefficient2D& tensor,
                                const SolveResult& reference, const ExperimentConfig& config,
                                const ProjectionBasis& basis) {
  record.normalization = tensor.normalization;
  record.imag_residual = tensor.imag_residual;
  record.rcond = tensor.rcond;
  record.min_value = tensor.min_determinant();
  if (!(min_diagonal(tensor) > 0.0)) {
    record.flags.emplace_back("nonpositive_coefficient");
    return {std::move(record), std::nullopt};
  }
  if (tensor.indefinite()) record.flags.emplace_back("indefinite_tensor");
  SolveResult u = solve_diffusion_2d_fd(tensor, BoundaryConditions2D{}, config.tol);
  fill_errors(record, reference, u, config, basis);
  return {std::move(record), std::move(u)};
}

ModelSolve2D homogenized_point_2d(const CoefficientField& a, const BandwidthPoint& point,
                                  const Basis2D& basis, const SolveResult& reference,
                                  const ExperimentConfig& config,
                                  std::optional<TensorCoefficient2D>* tensor_out = nullptr) {
  SweepRecord record{.bandwidth_pct = point.percent, .cutoff = point.cutoff,
                     .method = Method::Homogenized};
  std::optional<TensorCoefficient2D> tensor;
  try {
    tensor = homogenize_2d(a, basis, config.fine_dim_cap);
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::IllConditioned) throw;
    record.flags.emplace_back("ill_conditioned");
    return {std::move(record), std::nullopt};
  }
  auto result = solve_tensor_model(std::move(record), *tensor, reference, config,
                                   basis.projection());
  if (tensor_out != nullptr) *tensor_out = std::move(tensor);
  return result;
}

ModelSolve2D raw_point_2d(const CoefficientField& a, const BandwidthPoint& point,
                          const Basis2D& basis, const SolveResult& reference,
                          const ExperimentConfig& config) {
  SweepRecord record{.bandwidth_pct = point.percent, .cutoff = point.cutoff,
                     .method = Method::RawFiltered};
  try {
    const TensorCoefficient2D tensor = raw_filter_2d(a, basis);
    return solve_tensor_model(std::move(record), tensor, reference, config, basis.projection());
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::DegenerateCoefficient) throw;
    const RealVector filtered = coarse_project(a.values, basis.projection());
    record.min_value = *std::min_element(filtered.begin(), filtered.end());
    record.flags.emplace_back("nonpositive_coefficient");
    return {std::move(record), std::nullopt};
  }
}

SolveResult reference_2d(const CoefficientField& a, const ExperimentConfig& config, RunLog log) {
  const auto start = Clock::now();
  SolveResult reference = solve_diffusion_2d_fd(isotropic_tensor(a), BoundaryConditions2D{},
                                                config.tol);
  if (!reference.converged) {
    throw Error(ErrorCategory::IllConditioned,
                "reference solve did not reach the residual tolerance");
  }
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, "reference solve: residual %.3e, %.3f s",
                reference.residual, seconds_since(start));
  log_line(log, buffer);
  return reference;
}

void require_kind(const ExperimentConfig& config, bool two_d, const char* what) {
  if (config.is_2d() != two_d) {
    throw Error(ErrorCategory::Config,
                std::string(what) + " cannot run experiment '" +
                    std::string(to_string(config.experiment)) + "'");
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string join_flags(const std::vector<std::string>& flags) {
  if (flags.empty()) return "none";
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

RealVector node_difference(const std::optional<SolveResult>& model, const SolveResult& exact) {
  RealVector diff(exact.u.size(), 0.0);
  if (model) {
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = model->u[i] - exact.u[i];
  }
  return diff;
}

}  // namespace

std::string_view to_string(Method method) {
  return method == Method::Homogenized ? "homogenized" : "raw_filtered";
}

SweepResult run_sweep_1d(const ExperimentConfig& config, RunLog log) {
  require_kind(config, false, "run_sweep_1d");
  const auto schedule = bandwidth_schedule(config);
  CoefficientField a = make_config_coefficient(config);
  SolveResult reference = exact_diffusion_1d(a, 0.0, 1.0);
  log_line(log, "coefficient: " + a.provenance.describe());

  std::vector<SweepRecord> records;
  for (const auto& point : schedule) {
    const auto start = Clock::now();
    const ProjectionBasis basis = build_projection(a.grid, point.cutoff);
    records.push_back(homogenized_record_1d(a, point, basis, reference, config));
    records.push_back(raw_record_1d(a, point, basis, reference, config));
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, ": %.3f s", seconds_since(start));
    log_line(log, point_label(point) + buffer);
  }
  return SweepResult{std::move(a), std::move(reference), std::move(records)};
}

SweepResult run_sweep_2d(const ExperimentConfig& config, RunLog log) {
  require_kind(config, true, "run_sweep_2d");
  const auto schedule = bandwidth_schedule(config);
  CoefficientField a = make_config_coefficient(config);
  log_line(log, "coefficient: " + a.provenance.describe());
  SolveResult reference = reference_2d(a, config, log);

  std::vector<SweepRecord> records;
  for (const auto& point : schedule) {
    const auto start = Clock::now();
    const Basis2D basis(build_projection(a.grid, point.cutoff));
    records.push_back(homogenized_point_2d(a, point, basis, reference, config).record);
    records.push_back(raw_point_2d(a, point, basis, reference, config).record);
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, ": %.3f s", seconds_since(start));
    log_line(log, point_label(point) + buffer);
  }
  return SweepResult{std::move(a), std::move(reference), std::move(records)};
}

KernelSweep run_kernel_sweep(const ExperimentConfig& config, RunLog log) {
  require_kind(config, false, "run_kernel_sweep");
  const auto schedule = bandwidth_schedule(config);
  CoefficientField a = make_config_coefficient(config);
  log_line(log, "coefficient: " + a.provenance.describe());

  std::vector<KernelRecord> records;
  auto add = [&](const BandwidthPoint& point, bool full, const ProjectionBasis& basis) {
    const auto start = Clock::now();
    HomogenizedKernel kernel = homogenize_kernel_1d(a, basis);
    const double mass = offdiag_mass(kernel);
    records.push_back(KernelRecord{point.percent, point.cutoff, full, std::move(kernel), mass});
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, ": offdiag_mass %.6e, %.3f s", mass, seconds_since(start));
    log_line(log, (full ? std::string("full band") : point_label(point)) + buffer);
  };
  for (const auto& point : schedule) add(point, false, build_projection(a.grid, point.cutoff));
  add(BandwidthPoint{100.0, a.grid.nx() / 2}, true, full_projection(a.grid));
  return KernelSweep{std::move(a), std::move(records)};
}

Panels2D run_panels_2d(const ExperimentConfig& config, RunLog log) {
  require_kind(config, true, "run_panels_2d");
  const BandwidthPoint point = bandwidth_schedule(config).front();
  CoefficientField a = make_config_coefficient(config);
  log_line(log, "coefficient: " + a.provenance.describe());
  SolveResult exact = reference_2d(a, config, log);

  const auto start = Clock::now();
  const Basis2D basis(build_projection(a.grid, point.cutoff));
  std::optional<TensorCoefficient2D> tensor;
  ModelSolve2D homogenized = homogenized_point_2d(a, point, basis, exact, config, &tensor);
  if (!tensor) {
    throw Error(ErrorCategory::IllConditioned, "homogenization failed at " + point_label(point));
  }
  ModelSolve2D raw = raw_point_2d(a, point, basis, exact, config);

  RealVector filtered_values = coarse_project(a.values, basis.projection());
  std::optional<CoefficientField> filtered;
  if (*std::min_element(filtered_values.begin(), filtered_values.end()) > 0.0) {
    filtered = make_coefficient(a.grid, filtered_values, a.provenance);
  }
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, ": %.3f s", seconds_since(start));
  log_line(log, point_label(point) + buffer);

  RealVector diff_h = node_difference(homogenized.solution, exact);
  RealVector diff_f = node_difference(raw.solution, exact);
  std::vector<SweepRecord> records{std::move(homogenized.record), std::move(raw.record)};
  return Panels2D{
      .coefficient = std::move(a),
      .point = point,
      .homogenized = std::move(*tensor),
      .filtered = std::move(filtered),
      .filtered_values = std::move(filtered_values),
      .exact = std::move(exact),
      .homogenized_solution = std::move(homogenized.solution),
      .filtered_solution = std::move(raw.solution),
      .diff_homogenized = std::move(diff_h),
      .diff_filtered = std::move(diff_f),
      .records = std::move(records),
  };
}

std::string sweep_csv(const std::vector<SweepRecord>& records, const Provenance& provenance) {
  std::string out =
      "bandwidth_pct,method,l1,l2,flags,cutoff,normalization,solver_residual,imag_residual,"
      "rcond,min_value,generator,seed\n";
  const std::string generator = csv_quote(provenance.describe());
  const std::string seed = std::to_string(provenance.seed);
  for (const auto& r : records) {
    out += format_double(r.bandwidth_pct) + ',' + std::string(to_string(r.method)) + ',' +
           optional_field(r.l1) + ',' + optional_field(r.l2) + ',' + join_flags(r.flags) + ',' +
           std::to_string(r.cutoff) + ',' + format_double(r.normalization) + ',' +
           format_double(r.solver_residual) + ',' + format_double(r.imag_residual) + ',' +
           format_double(r.rcond) + ',' + format_double(r.min_value) + ',' + generator + ',' +
           seed + '\n';
  }
  return out;
}

std::string kernel_mass_csv(const KernelSweep& sweep) {
  std::string out =
      "bandwidth_pct,cutoff,full_band,offdiag_mass,imag_residual,hermitian_residual,"
      "solve_residual,rcond,generator,seed\n";
  const std::string generator = csv_quote(sweep.coefficient.provenance.describe());
  const std::string seed = std::to_string(sweep.coefficient.provenance.seed);
  for (const auto& r : sweep.records) {
    out += format_double(r.bandwidth_pct) + ',' + std::to_string(r.cutoff) + ',' +
           (r.full_band ? "1" : "0") + ',' + format_double(r.offdiag_mass) + ',' +
           format_double(r.kernel.imag_residual) + ',' +
           format_double(r.kernel.hermitian_residual) + ',' +
           format_double(r.kernel.solve_residual) + ',' + format_double(r.kernel.rcond) + ',' +
           generator + ',' + seed + '\n';
  }
  return out;
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const std::filesystem::path& dir) {
  const GridSpec& g = result.coefficient.grid;
  const auto coefficient = dir / "coefficient.csv";
  const auto sweep = dir / "sweep.csv";
  write_grid_csv(coefficient, g.nx(), g.ny(), "coefficient", result.coefficient.values);
  write_text_file(sweep, sweep_csv(result.records, result.coefficient.provenance));
  return {coefficient, sweep};
}

std::vector<std::filesystem::path> write_kernel_sweep(const KernelSweep& sweep,
                                                      const std::filesystem::path& dir) {
  const GridSpec& g = sweep.coefficient.grid;
  std::vector<std::filesystem::path> out{dir / "coefficient.csv", dir / "kernel_mass.csv"};
  write_grid_csv(out[0], g.nx(), g.ny(), "coefficient", sweep.coefficient.values);
  write_text_file(out[1], kernel_mass_csv(sweep));
  for (const auto& r : sweep.records) {
    char name[64];
    if (r.full_band) {
      std::snprintf(name, sizeof name, "kernel_full.csv");
    } else {
      std::snprintf(name, sizeof name, "kernel_c%03d.csv", r.cutoff);
    }
    // Row-major (x, x'): row i holds K(x_i, x'_j) for every j.
    const Eigen::MatrixXd& k = r.kernel.matrix;
    RealVector values(static_cast<std::size_t>(k.size()));
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      for (Eigen::Index j = 0; j < k.cols(); ++j) {
        values[static_cast<std::size_t>(i * k.cols() + j)] = k(i, j);
      }
    }
    write_grid_csv(dir / name, static_cast<int>(k.cols()), static_cast<int>(k.rows()), "kernel",
                   values);
    out.push_back(dir / name);
  }
  return out;
}

std::vector<std::filesystem::path> write_tensor(const TensorCoefficient2D& tensor,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix) {
  const GridSpec& g = tensor.grid;
  std::vector<std::filesystem::path> out;
  const std::pair<const char*, const RealVector*> parts[] = {
      {"xx", &tensor.xx}, {"xy", &tensor.xy}, {"yx", &tensor.yx}, {"yy", &tensor.yy}};
  for (const auto& [suffix, field] : parts) {
    const std::string name = prefix + "_" + suffix;
    out.push_back(dir / (name + ".csv"));
    write_grid_csv(out.back(), g.nx(), g.ny(), name, *field);
  }
  return out;
}

std::vector<std::filesystem::path> write_panels(const Panels2D& panels,
                                                const std::filesystem::path& dir) {
  const GridSpec& g = panels.coefficient.grid;
  std::vector<std::filesystem::path> out;
  auto grid_file = [&](const std::string& name, int nx, int ny, const RealVector& values) {
    out.push_back(dir / (name + ".csv"));
    write_grid_csv(out.back(), nx, ny, name, values);
  };
  const int nodes_x = panels.exact.nodes_x;
  const int nodes_y = panels.exact.nodes_y;
  const RealVector empty_nodes(panels.exact.u.size(), 0.0);

  grid_file("coefficient", g.nx(), g.ny(), panels.coefficient.values);
  for (auto& p : write_tensor(panels.homogenized, dir, "homogenized")) out.push_back(p);
  grid_file("filtered", g.nx(), g.ny(), panels.filtered_values);
  grid_file("u_exact", nodes_x, nodes_y, panels.exact.u);
  grid_file("u_homogenized", nodes_x, nodes_y,
            panels.homogenized_solution ? panels.homogenized_solution->u : empty_nodes);
  grid_file("u_filtered", nodes_x, nodes_y,
            panels.filtered_solution ? panels.filtered_solution->u : empty_nodes);
  grid_file("diff_homogenized", nodes_x, nodes_y, panels.diff_homogenized);
  grid_file("diff_filtered", nodes_x, nodes_y, panels.diff_filtered);
  out.push_back(dir / "panels.csv");
  write_text_file(out.back(), sweep_csv(panels.records, panels.coefficient.provenance));
  return out;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config) {
  // Reject an illegal schedule before touching the output directory.
  (void)bandwidth_schedule(config);
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw Error(ErrorCategory::Io, "cannot create " + config.out.string());
  std::ofstream log(config.out / "run.log", std::ios::trunc);
  if (!log) throw Error(ErrorCategory::Io, "cannot write " + (config.out / "run.log").string());
  log << "experiment: " << to_string(config.experiment) << '\n';

  const auto start = Clock::now();
  std::vector<std::filesystem::path> written;
  switch (config.experiment) {
    case ExperimentKind::Sweep1D:
      written = write_sweep(run_sweep_1d(config, &log), config.out);
      break;
    case ExperimentKind::Sweep2D:
      written = write_sweep(run_sweep_2d(config, &log), config.out);
      break;
    case ExperimentKind::Kernel:
      written = write_kernel_sweep(run_kernel_sweep(config, &log), config.out);
      break;
    case ExperimentKind::Panels2D:
      written = write_panels(run_panels_2d(config, &log), config.out);
      break;
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "total: %.3f s", seconds_since(start));
  log << buffer << '\n';
  return written;
}

}  // namespace homog
