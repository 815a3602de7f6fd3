#pragma once

#include <span>
#include <vector>

#include "homog/grid.hpp"

namespace homog {

enum class Axis { X, Y };

/// Which part of an axis spectrum an operator acts on: the coarse rows (P),
/// the fine rows (Q) or every row (the full transform).
enum class Band { Coarse, Fine, All };

/// Signed integer wavenumber pair; ky is 0 on 1D grids.
struct WaveVector {
  int kx = 0;
  int ky = 0;
  friend bool operator==(const WaveVector&, const WaveVector&) = default;
};

/// Coarse/fine partition of the signed wavenumbers of one periodic axis.
///
/// Wavenumbers run over -n/2+1 ... n/2 and every list is kept in ascending
/// signed order. A cutoff partition keeps |k| <= cutoff as coarse, so the
/// coarse set always holds the dc mode, is closed under k -> -k, and never
/// holds the Nyquist mode n/2.
class AxisPartition {
 public:
  /// Throws InvalidCutoff unless 0 <= cutoff < n/2.
  static AxisPartition with_cutoff(int n, int cutoff);
  /// Every mode (Nyquist included) is coarse; the fine set is empty.
  static AxisPartition full(int n);
  /// Degenerate single-sample axis (the y axis of a 1D grid).
  static AxisPartition trivial();

  int n() const noexcept { return n_; }
  /// Cutoff wavenumber; n/2 for a full partition.
  int cutoff() const noexcept { return cutoff_; }
  bool is_full() const noexcept { return fine_.empty(); }

  const std::vector<int>& coarse() const noexcept { return coarse_; }
  const std::vector<int>& fine() const noexcept { return fine_; }
  const std::vector<int>& all() const noexcept { return all_; }
  const std::vector<int>& modes(Band band) const noexcept;

  int coarse_count() const noexcept { return static_cast<int>(coarse_.size()); }
  int fine_count() const noexcept { return static_cast<int>(fine_.size()); }
  bool is_coarse(int k) const noexcept;

  /// Spectral symbol of d/dx on the unit interval: i 2 pi k. The Nyquist
  /// entry is +i pi n.
  Complex derivative(int k) const noexcept;

 private:
  AxisPartition(int n, int cutoff, bool full);

  int n_;
  int cutoff_;
  std::vector<int> coarse_;
  std::vector<int> fine_;
  std::vector<int> all_;
};

/// Tensor-product projection basis on a 1D or 2D grid.
class ProjectionBasis {
 public:
  ProjectionBasis(GridSpec grid, AxisPartition x, AxisPartition y);

  const GridSpec& grid() const noexcept { return grid_; }
  const AxisPartition& x() const noexcept { return x_; }
  const AxisPartition& y() const noexcept { return y_; }
  const AxisPartition& axis(Axis a) const noexcept { return a == Axis::X ? x_ : y_; }

  /// k_p: number of jointly coarse modes (P_x P_y rows).
  int coarse_count() const noexcept { return x_.coarse_count() * y_.coarse_count(); }
  /// k_q = N - k_p.
  int fine_count() const noexcept {
    return static_cast<int>(grid_.size()) - coarse_count();
  }
  bool is_full() const noexcept { return fine_count() == 0; }

 private:
  GridSpec grid_;
  AxisPartition x_;
  AxisPartition y_;
};

/// Coarse set {|k| <= cutoff} on every axis of `grid`. On a 1D grid
/// `cutoff_y` is ignored. Throws InvalidCutoff when a cutoff reaches n/2.
ProjectionBasis build_projection(const GridSpec& grid, int cutoff_x, int cutoff_y);
ProjectionBasis build_projection(const GridSpec& grid, int cutoff);
/// Basis that keeps every mode; homogenization on it is the identity.
ProjectionBasis full_projection(const GridSpec& grid);

/// Fourier coefficients under the unitary transform, in ascending signed
/// wavenumber order (y slow), each tagged coarse or fine.
struct SpectralVector {
  GridSpec grid;
  ComplexVector coefficients;
  std::vector<Band> tags;

  static constexpr const char* kNormalization = "unitary";

  Complex at(int kx, int ky = 0) const;
  double squared_norm() const;
};

SpectralVector forward(std::span<const double> v, const ProjectionBasis& basis);
SpectralVector forward(std::span<const Complex> v, const ProjectionBasis& basis);
ComplexVector inverse(const SpectralVector& s);
/// Real part of the inverse; the largest discarded imaginary part goes to
/// `imag_residual` when given.
RealVector inverse_real(const SpectralVector& s, double* imag_residual = nullptr);

/// P*P v: zero every fine coefficient and transform back.
RealVector coarse_project(std::span<const double> v, const ProjectionBasis& basis);
/// Q*Q v.
RealVector fine_project(std::span<const double> v, const ProjectionBasis& basis);

/// Complex array with `cols` entries along x and `rows` along y (row-major).
/// Either extent may be spatial samples or the rows of a band operator.
struct Array2 {
  int cols = 0;
  int rows = 0;
  ComplexVector data;
};

/// Applies the band rows of the axis transform (P, Q or F) along one axis.
/// The extent along `axis` goes from partition.n() to the band's size.
Array2 apply_axis(const Array2& in, const AxisPartition& partition, Axis axis, Band band);
/// Adjoint of apply_axis (P*, Q* or F^-1).
Array2 apply_axis_adjoint(const Array2& in, const AxisPartition& partition, Axis axis,
                          Band band);

/// Coefficients of v on the subspace (band_x along x, band_y along y), in the
/// order ky slow / kx fast over the two mode lists.
ComplexVector project(std::span<const Complex> v, const ProjectionBasis& basis,
                      Band band_x, Band band_y);
/// Adjoint of `project`: real-space vector from subspace coefficients.
ComplexVector embed(std::span<const Complex> coefficients, const ProjectionBasis& basis,
                    Band band_x, Band band_y);

/// Diagonals of K_P and K_Q for one axis.
struct DerivativeSpectrum {
  ComplexVector coarse;
  ComplexVector fine;
};
DerivativeSpectrum derivative_spectrum(const AxisPartition& partition);
DerivativeSpectrum derivative_spectrum(const ProjectionBasis& basis, Axis axis = Axis::X);

/// Spectral derivative along `axis` using every mode except Nyquist.
RealVector spectral_derivative(std::span<const double> v, const GridSpec& grid,
                               Axis axis = Axis::X);

}  // namespace homog
