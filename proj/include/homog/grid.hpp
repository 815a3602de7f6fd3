#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace homog {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform periodic sampling of the unit interval (ny == 1) or unit square.
///
/// Samples sit at x = ix / nx, y = iy / ny. Two-dimensional data is stored
/// row-major with y as the slow index: value(ix, iy) = data[iy * nx + ix].
class GridSpec {
 public:
  /// Throws InvalidArgument unless n >= 4 and even.
  static GridSpec line(int n);
  static GridSpec square(int nx, int ny);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }
  bool is_1d() const noexcept { return ny_ == 1; }
  double hx() const noexcept { return 1.0 / nx_; }
  double hy() const noexcept { return 1.0 / ny_; }

  std::size_t index(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridSpec(int nx, int ny) : nx_(nx), ny_(ny) {}

  int nx_;
  int ny_;
};

/// Throws Dimension when `length` does not match the grid.
void require_size(const GridSpec& grid, std::size_t length, const char* what);

}  // namespace homog
