#include "homog/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fft.hpp"
#include "homog/error.hpp"

namespace homog {
namespace {

using detail::Direction;
using detail::fft_slot;

int min_wavenumber(int n) { return n == 1 ? 0 : -n / 2 + 1; }

// Transform every line along `axis` of a rows x cols array (unitary scaling).
void transform_axis(Array2& a, Axis axis, Direction direction) {
  const int n = axis == Axis::X ? a.cols : a.rows;
  if (n == 1) return;
  if (axis == Axis::X) {
    detail::dft_along_x(a.data.data(), a.cols, a.rows, direction);
  } else {
    detail::dft_along_y(a.data.data(), a.cols, a.rows, direction);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& c : a.data) c *= scale;
}

Array2 to_array(std::span<const Complex> v, const GridSpec& grid) {
  require_size(grid, v.size(), "input vector");
  return Array2{grid.nx(), grid.ny(), ComplexVector(v.begin(), v.end())};
}

}  // namespace

// ---------------------------------------------------------------------------
// AxisPartition

AxisPartition::AxisPartition(int n, int cutoff, bool full) : n_(n), cutoff_(cutoff) {
  const int kmin = min_wavenumber(n);
  const int kmax = n == 1 ? 0 : n / 2;
  for (int k = kmin; k <= kmax; ++k) {
    all_.push_back(k);
    if (full || std::abs(k) <= cutoff) {
      coarse_.push_back(k);
    } else {
      fine_.push_back(k);
    }
  }
}

AxisPartition AxisPartition::with_cutoff(int n, int cutoff) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorCategory::InvalidArgument,
                "axis length must be even, got " + std::to_string(n));
  }
  if (cutoff < 0 || cutoff >= n / 2) {
    throw Error(ErrorCategory::InvalidCutoff,
                "cutoff " + std::to_string(cutoff) + " outside [0, " +
                    std::to_string(n / 2) + ") for n = " + std::to_string(n) +
                    " (would include the Nyquist mode)");
  }
  return AxisPartition(n, cutoff, false);
}

AxisPartition AxisPartition::full(int n) { return AxisPartition(n, n == 1 ? 0 : n / 2, true); }

AxisPartition AxisPartition::trivial() { return AxisPartition(1, 0, true); }

const std::vector<int>& AxisPartition::modes(Band band) const noexcept {
  switch (band) {
    case Band::Coarse: return coarse_;
    case Band::Fine: return fine_;
    case Band::All: break;
  }
  return all_;
}

bool AxisPartition::is_coarse(int k) const noexcept {
  return is_full() || std::abs(k) <= cutoff_;
}

Complex AxisPartition::derivative(int k) const noexcept {
  if (n_ > 1 && k == n_ / 2) return Complex(0.0, std::numbers::pi * n_);
  return Complex(0.0, 2.0 * std::numbers::pi * k);
}

// ---------------------------------------------------------------------------
// ProjectionBasis

ProjectionBasis::ProjectionBasis(GridSpec grid, AxisPartition x, AxisPartition y)
    : grid_(grid), x_(std::move(x)), y_(std::move(y)) {
  if (x_.n() != grid_.nx() || y_.n() != grid_.ny()) {
    throw Error(ErrorCategory::Dimension, "axis partitions do not match the grid");
  }
}

ProjectionBasis build_projection(const GridSpec& grid, int cutoff_x, int cutoff_y) {
  auto px = AxisPartition::with_cutoff(grid.nx(), cutoff_x);
  auto py = grid.is_1d() ? AxisPartition::trivial()
                         : AxisPartition::with_cutoff(grid.ny(), cutoff_y);
  return ProjectionBasis(grid, std::move(px), std::move(py));
}

ProjectionBasis build_projection(const GridSpec& grid, int cutoff) {
  return build_projection(grid, cutoff, cutoff);
}

ProjectionBasis full_projection(const GridSpec& grid) {
  auto py = grid.is_1d() ? AxisPartition::trivial() : AxisPartition::full(grid.ny());
  return ProjectionBasis(grid, AxisPartition::full(grid.nx()), std::move(py));
}

// ---------------------------------------------------------------------------
// Full transforms

Complex SpectralVector::at(int kx, int ky) const {
  const int ix = kx - min_wavenumber(grid.nx());
  const int iy = ky - min_wavenumber(grid.ny());
  if (ix < 0 || ix >= grid.nx() || iy < 0 || iy >= grid.ny()) {
    throw Error(ErrorCategory::InvalidArgument, "wavenumber out of range");
  }
  return coefficients[grid.index(ix, iy)];
}

double SpectralVector::squared_norm() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return s;
}

SpectralVector forward(std::span<const Complex> v, const ProjectionBasis& basis) {
  const GridSpec& grid = basis.grid();
  Array2 a = to_array(v, grid);
  a = apply_axis(a, basis.x(), Axis::X, Band::All);
  a = apply_axis(a, basis.y(), Axis::Y, Band::All);

  SpectralVector out{grid, std::move(a.data), {}};
  out.tags.reserve(grid.size());
  for (int ky : basis.y().all()) {
    for (int kx : basis.x().all()) {
      const bool coarse = basis.x().is_coarse(kx) && basis.y().is_coarse(ky);
      out.tags.push_back(coarse ? Band::Coarse : Band::Fine);
    }
  }
  return out;
}

SpectralVector forward(std::span<const double> v, const ProjectionBasis& basis) {
  ComplexVector c(v.begin(), v.end());
  return forward(std::span<const Complex>(c), basis);
}

ComplexVector inverse(const SpectralVector& s) {
  const GridSpec& grid = s.grid;
  require_size(grid, s.coefficients.size(), "spectral vector");
  const auto px = AxisPartition::full(grid.nx());
  const auto py = grid.is_1d() ? AxisPartition::trivial() : AxisPartition::full(grid.ny());
  Array2 a{grid.nx(), grid.ny(), s.coefficients};
  a = apply_axis_adjoint(a, py, Axis::Y, Band::All);
  a = apply_axis_adjoint(a, px, Axis::X, Band::All);
  return std::move(a.data);
}

RealVector inverse_real(const SpectralVector& s, double* imag_residual) {
  const ComplexVector c = inverse(s);
  RealVector out(c.size());
  double imag = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = c[i].real();
    imag = std::max(imag, std::abs(c[i].imag()));
  }
  if (imag_residual) *imag_residual = imag;
  return out;
}

namespace {

RealVector band_project(std::span<const double> v, const ProjectionBasis& basis, bool keep_coarse) {
  SpectralVector s = forward(v, basis);
  for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
    const bool coarse = s.tags[i] == Band::Coarse;
    if (coarse != keep_coarse) s.coefficients[i] = 0.0;
  }
  return inverse_real(s);
}

}  // namespace

RealVector coarse_project(std::span<const double> v, const ProjectionBasis& basis) {
  return band_project(v, basis, true);
}

RealVector fine_project(std::span<const double> v, const ProjectionBasis& basis) {
  return band_project(v, basis, false);
}

// ---------------------------------------------------------------------------
// Axis-wise band operators

Array2 apply_axis(const Array2& in, const AxisPartition& partition, Axis axis, Band band) {
  const int n = partition.n();
  const int extent = axis == Axis::X ? in.cols : in.rows;
  if (extent != n || in.data.size() != static_cast<std::size_t>(in.cols) * in.rows) {
    throw Error(ErrorCategory::Dimension, "apply_axis: extent does not match partition");
  }
  Array2 work = in;
  transform_axis(work, axis, Direction::Forward);

  const auto& modes = partition.modes(band);
  const int m = static_cast<int>(modes.size());
  Array2 out;
  if (axis == Axis::X) {
    out = Array2{m, in.rows, ComplexVector(static_cast<std::size_t>(m) * in.rows)};
    for (int r = 0; r < in.rows; ++r) {
      for (int j = 0; j < m; ++j) {
        out.data[static_cast<std::size_t>(r) * m + j] =
            work.data[static_cast<std::size_t>(r) * in.cols + fft_slot(modes[j], n)];
      }
    }
  } else {
    out = Array2{in.cols, m, ComplexVector(static_cast<std::size_t>(in.cols) * m)};
    for (int j = 0; j < m; ++j) {
      const std::size_t src = static_cast<std::size_t>(fft_slot(modes[j], n)) * in.cols;
      std::copy_n(work.data.begin() + static_cast<std::ptrdiff_t>(src), in.cols,
                  out.data.begin() + static_cast<std::ptrdiff_t>(j) * in.cols);
    }
  }
  return out;
}

Array2 apply_axis_adjoint(const Array2& in, const AxisPartition& partition, Axis axis,
                          Band band) {
  const int n = partition.n();
  const auto& modes = partition.modes(band);
  const int m = static_cast<int>(modes.size());
  const int extent = axis == Axis::X ? in.cols : in.rows;
  if (extent != m || in.data.size() != static_cast<std::size_t>(in.cols) * in.rows) {
    throw Error(ErrorCategory::Dimension,
                "apply_axis_adjoint: extent does not match band size");
  }

  Array2 out;
  if (axis == Axis::X) {
    out = Array2{n, in.rows, ComplexVector(static_cast<std::size_t>(n) * in.rows)};
    for (int r = 0; r < in.rows; ++r) {
      for (int j = 0; j < m; ++j) {
        out.data[static_cast<std::size_t>(r) * n + fft_slot(modes[j], n)] =
            in.data[static_cast<std::size_t>(r) * m + j];
      }
    }
  } else {
    out = Array2{in.cols, n, ComplexVector(static_cast<std::size_t>(in.cols) * n)};
    for (int j = 0; j < m; ++j) {
      const std::size_t dst = static_cast<std::size_t>(fft_slot(modes[j], n)) * in.cols;
      std::copy_n(in.data.begin() + static_cast<std::ptrdiff_t>(j) * in.cols, in.cols,
                  out.data.begin() + static_cast<std::ptrdiff_t>(dst));
    }
  }
  transform_axis(out, axis, Direction::Backward);
  return out;
}

ComplexVector project(std::span<const Complex> v, const ProjectionBasis& basis, Band band_x,
                      Band band_y) {
  Array2 a = to_array(v, basis.grid());
  a = apply_axis(a, basis.x(), Axis::X, band_x);
  a = apply_axis(a, basis.y(), Axis::Y, band_y);
  return std::move(a.data);
}

ComplexVector embed(std::span<const Complex> coefficients, const ProjectionBasis& basis,
                    Band band_x, Band band_y) {
  const int mx = static_cast<int>(basis.x().modes(band_x).size());
  const int my = static_cast<int>(basis.y().modes(band_y).size());
  if (coefficients.size() != static_cast<std::size_t>(mx) * my) {
    throw Error(ErrorCategory::Dimension, "embed: coefficient count does not match subspace");
  }
  Array2 a{mx, my, ComplexVector(coefficients.begin(), coefficients.end())};
  a = apply_axis_adjoint(a, basis.y(), Axis::Y, band_y);
  a = apply_axis_adjoint(a, basis.x(), Axis::X, band_x);
  return std::move(a.data);
}

// ---------------------------------------------------------------------------
// Derivatives

DerivativeSpectrum derivative_spectrum(const AxisPartition& partition) {
  DerivativeSpectrum d;
  for (int k : partition.coarse()) d.coarse.push_back(partition.derivative(k));
  for (int k : partition.fine()) d.fine.push_back(partition.derivative(k));
  return d;
}

DerivativeSpectrum derivative_spectrum(const ProjectionBasis& basis, Axis axis) {
  return derivative_spectrum(basis.axis(axis));
}

RealVector spectral_derivative(std::span<const double> v, const GridSpec& grid, Axis axis) {
  require_size(grid, v.size(), "spectral_derivative input");
  if (axis == Axis::Y && grid.is_1d()) return RealVector(v.size(), 0.0);
  const auto partition = AxisPartition::full(axis == Axis::X ? grid.nx() : grid.ny());
  const int n = partition.n();

  Array2 a{grid.nx(), grid.ny(), ComplexVector(v.begin(), v.end())};
  a = apply_axis(a, partition, axis, Band::All);
  const auto& modes = partition.all();
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) {
      const int k = modes[axis == Axis::X ? c : r];
      auto& value = a.data[static_cast<std::size_t>(r) * a.cols + c];
      value *= (k == n / 2) ? Complex(0.0) : partition.derivative(k);
    }
  }
  a = apply_axis_adjoint(a, partition, axis, Band::All);
  RealVector out(a.data.size());
  std::transform(a.data.begin(), a.data.end(), out.begin(), [](Complex c) { return c.real(); });
  return out;
}

}  // namespace homog
