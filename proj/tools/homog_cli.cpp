// Command-line front end: coefficient generation, single homogenizations and
// the experiment sweeps. Errors go to stderr as one JSON object per line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "homog/config.hpp"
#include "homog/error.hpp"
#include "homog/experiments.hpp"
#include "homog/grid_io.hpp"
#include "homog/homogenize1d.hpp"
#include "homog/homogenize2d.hpp"

namespace {

using homog::ErrorCategory;
using homog::ExperimentConfig;
using homog::ExperimentKind;
using nlohmann::json;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string grid;
  std::optional<int> cutoff;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--grid", o.grid, "grid size: N or NXxNY");
  cmd->add_option("--cutoff", o.cutoff, "retained wavenumber cutoff (replaces the schedule)");
  cmd->add_option("--tol", o.tol, "finite-difference residual tolerance");
}

void parse_grid(const std::string& text, ExperimentConfig& config) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw homog::Error(ErrorCategory::InvalidArgument, "bad --grid value '" + text + "'");
    }
    return v;
  };
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) {
    config.nx = to_int(text);
    config.ny.reset();
  } else {
    config.nx = to_int(text.substr(0, x));
    config.ny = to_int(text.substr(x + 1));
  }
}

ExperimentConfig build_config(const CommonOptions& o, std::optional<ExperimentKind> kind) {
  ExperimentConfig config = o.config.empty() ? ExperimentConfig{} : homog::load_config(o.config);
  if (kind) config.experiment = *kind;
  if (!o.grid.empty()) parse_grid(o.grid, config);
  if (o.seed) config.seed = *o.seed;
  if (!o.out.empty()) config.out = o.out;
  if (o.cutoff) config.cutoff = *o.cutoff;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw homog::Error(ErrorCategory::InvalidArgument, "--tol must be > 0");
    config.tol = *o.tol;
  }
  return config;
}

json path_list(const std::vector<std::filesystem::path>& paths) {
  json out = json::array();
  for (const auto& p : paths) out.push_back(p.string());
  return out;
}

json gen_coeff(const CommonOptions& o) {
  // A two-axis --grid, or a 2D experiment in the config, selects a 2D field.
  ExperimentConfig config = build_config(o, std::nullopt);
  if (o.grid.find_first_of("xX") != std::string::npos) config.experiment = ExperimentKind::Panels2D;
  const homog::CoefficientField a = homog::make_config_coefficient(config);
  const auto path = config.out / "coefficient.csv";
  homog::write_grid_csv(path, a.grid.nx(), a.grid.ny(), "coefficient", a.values);
  return {{"outputs", path_list({path})},
          {"generator", a.provenance.describe()},
          {"min", a.min()},
          {"max", a.max()}};
}

json homog1d(const CommonOptions& o) {
  const ExperimentConfig config = build_config(o, ExperimentKind::Sweep1D);
  const auto point = homog::bandwidth_schedule(config).front();
  const homog::CoefficientField a = homog::make_config_coefficient(config);
  const auto basis = homog::build_projection(a.grid, point.cutoff);
  const auto kernel = homog::homogenize_kernel_1d(a, basis);
  const auto h = homog::extract_diagonal(kernel);
  const auto filtered = homog::coarse_project(a.values, basis);

  const int n = a.grid.nx();
  std::vector<std::filesystem::path> paths{config.out / "coefficient.csv",
                                           config.out / "homogenized.csv",
                                           config.out / "filtered.csv"};
  homog::write_grid_csv(paths[0], n, 1, "coefficient", a.values);
  homog::write_grid_csv(paths[1], n, 1, "homogenized", h.values);
  homog::write_grid_csv(paths[2], n, 1, "filtered", filtered);
  return {{"outputs", path_list(paths)},
          {"cutoff", point.cutoff},
          {"normalization", h.normalization},
          {"min_homogenized", h.min_value},
          {"offdiag_mass", homog::offdiag_mass(kernel)},
          {"rcond", kernel.rcond},
          {"imag_residual", h.imag_residual}};
}

json homog2d(const CommonOptions& o) {
  const ExperimentConfig config = build_config(o, ExperimentKind::Panels2D);
  const auto point = homog::bandwidth_schedule(config).front();
  const homog::CoefficientField a = homog::make_config_coefficient(config);
  const homog::Basis2D basis(homog::build_projection(a.grid, point.cutoff));
  const auto tensor = homog::homogenize_2d(a, basis, config.fine_dim_cap);
  const auto filtered = homog::coarse_project(a.values, basis.projection());

  std::vector<std::filesystem::path> paths{config.out / "coefficient.csv",
                                           config.out / "filtered.csv"};
  homog::write_grid_csv(paths[0], a.grid.nx(), a.grid.ny(), "coefficient", a.values);
  homog::write_grid_csv(paths[1], a.grid.nx(), a.grid.ny(), "filtered", filtered);
  for (auto& p : homog::write_tensor(tensor, config.out, "homogenized")) paths.push_back(p);
  return {{"outputs", path_list(paths)},
          {"cutoff", point.cutoff},
          {"normalization", tensor.normalization},
          {"min_determinant", tensor.min_determinant()},
          {"indefinite", tensor.indefinite()},
          {"rcond", tensor.rcond},
          {"imag_residual", tensor.imag_residual}};
}

json experiment(const CommonOptions& o, ExperimentKind kind) {
  const ExperimentConfig config = build_config(o, kind);
  return {{"outputs", path_list(homog::run_experiment(config))},
          {"log", (config.out / "run.log").string()}};
}

int report_error(ErrorCategory category, const std::string& message) {
  const json line = {{"error", std::string(homog::to_string(category))},
                     {"message", message},
                     {"exit_code", homog::exit_code(category)}};
  std::cerr << line.dump() << '\n';
  return homog::exit_code(category);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral homogenization of diffusion coefficients"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"gen-coeff", "write a generated coefficient as a grid CSV"},
      {"homog1d", "homogenize a 1D coefficient at one cutoff"},
      {"homog2d", "homogenize a 2D coefficient at one cutoff"},
      {"sweep1d", "1D error-versus-bandwidth sweep"},
      {"sweep2d", "2D error-versus-bandwidth sweep"},
      {"kernel", "1D kernel broadening sweep"},
      {"panels2d", "2D solution-difference fields at one bandwidth"},
  };
  std::vector<CommonOptions> options(std::size(commands));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].name, commands[i].help));
    add_common(subs.back(), options[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(ErrorCategory::InvalidArgument, e.what());
  }

  try {
    json result;
    std::string name;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      name = commands[i].name;
      const CommonOptions& o = options[i];
      if (name == "gen-coeff") result = gen_coeff(o);
      else if (name == "homog1d") result = homog1d(o);
      else if (name == "homog2d") result = homog2d(o);
      else if (name == "sweep1d") result = experiment(o, ExperimentKind::Sweep1D);
      else if (name == "sweep2d") result = experiment(o, ExperimentKind::Sweep2D);
      else if (name == "kernel") result = experiment(o, ExperimentKind::Kernel);
      else result = experiment(o, ExperimentKind::Panels2D);
    }
    result["command"] = name;
    std::cout << result.dump() << '\n';
    return 0;
  } catch (const homog::Error& e) {
    return report_error(e.category(), e.what());
  } catch (const std::exception& e) {
    // Not a library error (e.g. out of memory): generic failure code.
    std::cerr << json{{"error", "internal"}, {"message", e.what()}, {"exit_code", 1}}.dump()
              << '\n';
    return 1;
  }
}
