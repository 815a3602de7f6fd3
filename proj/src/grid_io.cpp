#include "homog/grid_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "homog/error.hpp"

namespace homog {
namespace {

template <typename T>
T parse_number(std::string_view token, const std::filesystem::path& path) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCategory::Config,
                path.string() + ": cannot parse '" + std::string(token) + "' as a number");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  return buffer;
}

std::string grid_csv(int nx, int ny, std::string_view name, std::span<const double> values) {
  if (nx <= 0 || ny <= 0 ||
      values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw Error(ErrorCategory::InvalidArgument, "grid CSV: size does not match nx * ny");
  }
  if (name.find_first_of(",\r\n") != std::string_view::npos) {
    throw Error(ErrorCategory::InvalidArgument, "grid CSV: name must not contain ',' or newlines");
  }
  std::string out = std::to_string(nx) + "," + std::to_string(ny) + "," + std::string(name) + "\n";
  out.reserve(out.size() + values.size() * 25);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (ix > 0) out += ',';
      out += format_double(values[static_cast<std::size_t>(iy) * nx + static_cast<std::size_t>(ix)]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCategory::Io, "cannot open " + path.string() + " for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw Error(ErrorCategory::Io, "failed writing " + path.string());
}

void write_grid_csv(const std::filesystem::path& path, int nx, int ny, std::string_view name,
                    std::span<const double> values) {
  write_text_file(path, grid_csv(nx, ny, name, values));
}

GridData read_grid_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCategory::Io, "cannot open " + path.string());

  std::string line;
  if (!std::getline(file, line)) throw Error(ErrorCategory::Config, path.string() + ": empty file");
  const auto header = split(line);
  if (header.size() != 3) {
    throw Error(ErrorCategory::Config, path.string() + ": header must be 'nx,ny,name'");
  }
  GridData grid;
  grid.nx = parse_number<int>(header[0], path);
  grid.ny = parse_number<int>(header[1], path);
  grid.name = std::string(header[2]);
  if (grid.nx <= 0 || grid.ny <= 0) {
    throw Error(ErrorCategory::Config, path.string() + ": non-positive grid size");
  }
  grid.values.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  for (int iy = 0; iy < grid.ny; ++iy) {
    if (!std::getline(file, line)) {
      throw Error(ErrorCategory::Config, path.string() + ": fewer rows than ny");
    }
    const auto cells = split(line);
    if (cells.size() != static_cast<std::size_t>(grid.nx)) {
      throw Error(ErrorCategory::Config,
                  path.string() + ": row " + std::to_string(iy) + " does not have nx values");
    }
    for (auto cell : cells) grid.values.push_back(parse_number<double>(cell, path));
  }
  return grid;
}

}  // namespace homog
