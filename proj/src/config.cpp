#include "homog/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "homog/error.hpp"

namespace homog {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, std::string_view key, const std::string& what) {
  throw Error(ErrorCategory::Config,
              "config line " + std::to_string(line) + " (" + std::string(key) + "): " + what);
}

template <typename T>
T parse_value(std::string_view text, int line, std::string_view key) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(line, key, "cannot parse '" + std::string(text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) fail(line, key, "value must be finite");
  }
  return value;
}

int parse_grid_size(std::string_view text, int line, std::string_view key) {
  const int n = parse_value<int>(text, line, key);
  if (n < 4 || n % 2 != 0) fail(line, key, "grid sizes must be even and >= 4");
  return n;
}

double parse_positive(std::string_view text, int line, std::string_view key) {
  const double v = parse_value<double>(text, line, key);
  if (!(v > 0.0)) fail(line, key, "must be > 0");
  return v;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Sweep1D: return "sweep1d";
    case ExperimentKind::Sweep2D: return "sweep2d";
    case ExperimentKind::Kernel: return "kernel";
    case ExperimentKind::Panels2D: return "panels2d";
  }
  return "unknown";
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Random: return "random";
    case GeneratorKind::Periodic: return "periodic";
    case GeneratorKind::Annulus: return "annulus";
    case GeneratorKind::Constant: return "constant";
  }
  return "unknown";
}

GridSpec ExperimentConfig::grid() const {
  if (!is_2d()) return GridSpec::line(nx.value_or(256));
  const int x = nx.value_or(64);
  return GridSpec::square(x, ny.value_or(x));
}

std::vector<double> default_bandwidths(ExperimentKind kind) {
  const bool two_d = kind == ExperimentKind::Sweep2D || kind == ExperimentKind::Panels2D;
  const int step = two_d ? 10 : 5;
  std::vector<double> out;
  for (int p = 0; p <= 60; p += step) out.push_back(p);
  return out;
}

int cutoff_for_bandwidth(double percent, int n) {
  if (!(percent >= 0.0) || !(3.0 * percent < 200.0)) {
    throw Error(ErrorCategory::InvalidCutoff,
                "bandwidth " + std::to_string(percent) +
                    "% is outside [0, 200/3) of Nyquist (two-thirds rule)");
  }
  // The small guard keeps exact products such as 10% of 64 from rounding down.
  const int cutoff = static_cast<int>(std::floor(percent / 100.0 * (n / 2) + 1e-9));
  if (3 * cutoff > n) {
    throw Error(ErrorCategory::InvalidCutoff,
                "cutoff " + std::to_string(cutoff) + " violates the two-thirds rule for n = " +
                    std::to_string(n));
  }
  return cutoff;
}

std::vector<BandwidthPoint> bandwidth_schedule(const ExperimentConfig& config) {
  const GridSpec grid = config.grid();
  const int n = grid.is_1d() ? grid.nx() : std::min(grid.nx(), grid.ny());
  std::vector<BandwidthPoint> out;
  if (config.cutoff) {
    const int c = *config.cutoff;
    if (c < 0 || 3 * c > n) {
      throw Error(ErrorCategory::InvalidCutoff,
                  "cutoff " + std::to_string(c) + " must lie in [0, n/3] for n = " +
                      std::to_string(n));
    }
    out.push_back({100.0 * c / (n / 2), c});
    return out;
  }
  const auto percents =
      config.bandwidths.empty() ? default_bandwidths(config.experiment) : config.bandwidths;
  for (double p : percents) out.push_back({p, cutoff_for_bandwidth(p, n)});
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;

  using Handler = std::function<void(std::string_view, int, std::string_view)>;
  const std::map<std::string, Handler, std::less<>> handlers = {
      {"experiment",
       [&](std::string_view v, int line, std::string_view key) {
         if (v == "sweep1d") config.experiment = ExperimentKind::Sweep1D;
         else if (v == "sweep2d") config.experiment = ExperimentKind::Sweep2D;
         else if (v == "kernel") config.experiment = ExperimentKind::Kernel;
         else if (v == "panels2d") config.experiment = ExperimentKind::Panels2D;
         else fail(line, key, "expected sweep1d, sweep2d, kernel or panels2d");
       }},
      {"nx", [&](auto v, int line, auto key) { config.nx = parse_grid_size(v, line, key); }},
      {"ny", [&](auto v, int line, auto key) { config.ny = parse_grid_size(v, line, key); }},
      {"generator",
       [&](std::string_view v, int line, std::string_view key) {
         if (v == "random") config.generator = GeneratorKind::Random;
         else if (v == "periodic") config.generator = GeneratorKind::Periodic;
         else if (v == "annulus") config.generator = GeneratorKind::Annulus;
         else if (v == "constant") config.generator = GeneratorKind::Constant;
         else fail(line, key, "expected random, periodic, annulus or constant");
       }},
      {"seed", [&](auto v, int line, auto key) { config.seed = parse_value<std::uint64_t>(v, line, key); }},
      {"water_level", [&](auto v, int line, auto key) { config.water_level = parse_positive(v, line, key); }},
      {"low", [&](auto v, int line, auto key) { config.low = parse_positive(v, line, key); }},
      {"high", [&](auto v, int line, auto key) { config.high = parse_positive(v, line, key); }},
      {"period_cells",
       [&](auto v, int line, auto key) {
         const int p = parse_value<int>(v, line, key);
         if (p < 2 || p % 2 != 0) fail(line, key, "period must be even and >= 2");
         config.period_cells = p;
       }},
      {"k_min",
       [&](auto v, int line, auto key) {
         config.k_min = parse_value<int>(v, line, key);
         if (config.k_min < 1) fail(line, key, "must be >= 1");
       }},
      {"k_max",
       [&](auto v, int line, auto key) {
         config.k_max = parse_value<int>(v, line, key);
         if (config.k_max < 1) fail(line, key, "must be >= 1");
       }},
      {"amplitude", [&](auto v, int line, auto key) { config.amplitude = parse_positive(v, line, key); }},
      {"value", [&](auto v, int line, auto key) { config.value = parse_positive(v, line, key); }},
      {"bandwidths",
       [&](std::string_view v, int line, std::string_view key) {
         config.bandwidths.clear();
         std::size_t start = 0;
         while (start <= v.size()) {
           const auto comma = v.find(',', start);
           const auto item = trim(v.substr(start, comma - start));
           config.bandwidths.push_back(parse_value<double>(item, line, key));
           if (comma == std::string_view::npos) break;
           start = comma + 1;
         }
       }},
      {"cutoff",
       [&](auto v, int line, auto key) {
         const int c = parse_value<int>(v, line, key);
         if (c < 0) fail(line, key, "must be >= 0");
         config.cutoff = c;
       }},
      {"tol", [&](auto v, int line, auto key) { config.tol = parse_positive(v, line, key); }},
      {"compare",
       [&](std::string_view v, int line, std::string_view key) {
         if (v == "full") config.compare = CompareMode::Full;
         else if (v == "coarse") config.compare = CompareMode::Coarse;
         else fail(line, key, "expected full or coarse");
       }},
      {"fine_dim_cap",
       [&](auto v, int line, auto key) {
         config.fine_dim_cap = parse_value<std::size_t>(v, line, key);
         if (config.fine_dim_cap == 0) fail(line, key, "must be > 0");
       }},
      {"out",
       [&](std::string_view v, int line, std::string_view key) {
         if (v.empty()) fail(line, key, "must not be empty");
         config.out = std::string(v);
       }},
  };

  int line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_number, line, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto handler = handlers.find(key);
    if (handler == handlers.end()) fail(line_number, key, "unknown key");
    if (!seen.insert(std::string(key)).second) fail(line_number, key, "repeated key");
    handler->second(value, line_number, key);
  }

  if (config.k_min > config.k_max) {
    throw Error(ErrorCategory::Config, "k_min must not exceed k_max");
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCategory::Io, "cannot open config " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

CoefficientField make_config_coefficient(const ExperimentConfig& config) {
  const GridSpec grid = config.grid();
  switch (config.generator) {
    case GeneratorKind::Random:
      return gen_filtered_random(grid, config.seed, config.water_level);
    case GeneratorKind::Periodic:
      return gen_periodic(grid, config.low, config.high, config.period_cells.value_or(grid.nx()));
    case GeneratorKind::Annulus:
      return gen_sparse_annulus(grid, config.seed, config.k_min, config.k_max, config.amplitude,
                                config.water_level);
    case GeneratorKind::Constant:
      return gen_constant(grid, config.value);
  }
  throw Error(ErrorCategory::Config, "unknown generator");
}

}  // namespace homog
