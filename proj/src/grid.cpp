#include "homog/grid.hpp"

#include <string>

#include "homog/error.hpp"

namespace homog {
namespace {

void check_axis(int n, const char* axis) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorCategory::InvalidArgument,
                std::string("grid size along ") + axis +
                    " must be even and >= 4, got " + std::to_string(n));
  }
}

}  // namespace

GridSpec GridSpec::line(int n) {
  check_axis(n, "x");
  return GridSpec(n, 1);
}

GridSpec GridSpec::square(int nx, int ny) {
  check_axis(nx, "x");
  check_axis(ny, "y");
  return GridSpec(nx, ny);
}

void require_size(const GridSpec& grid, std::size_t length, const char* what) {
  if (length != grid.size()) {
    throw Error(ErrorCategory::Dimension,
                std::string(what) + ": expected " + std::to_string(grid.size()) +
                    " samples, got " + std::to_string(length));
  }
}

}  // namespace homog
