#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "homog/grid.hpp"

namespace homog {

/// Scientific notation with 17 significant digits ("%.16e"), enough to
/// round-trip every double. All CSV output goes through this.
std::string format_double(double value);

/// Grid CSV:
///
///   <nx>,<ny>,<name>
///   v(0,0),v(1,0),...,v(nx-1,0)
///   ...
///   v(0,ny-1),...,v(nx-1,ny-1)
///
/// One line per row of constant y, rows in increasing y. `name` must not
/// contain commas or newlines.
struct GridData {
  int nx = 0;
  int ny = 0;
  std::string name;
  RealVector values;
};

std::string grid_csv(int nx, int ny, std::string_view name, std::span<const double> values);

/// Truncates and rewrites `path`. Throws Io on failure and InvalidArgument
/// on a bad name or size.
void write_grid_csv(const std::filesystem::path& path, int nx, int ny, std::string_view name,
                    std::span<const double> values);

/// Throws Io when the file cannot be read and Config when it is malformed.
GridData read_grid_csv(const std::filesystem::path& path);

/// Writes `text` to `path`, creating parent directories. Throws Io.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace homog
