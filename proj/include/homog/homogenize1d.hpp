#pragma once

#include <Eigen/Dense>

#include "homog/coefficients.hpp"
#include "homog/spectral_ops.hpp"

namespace homog {

/// Default accuracy contract for the fine-block solves.
inline constexpr double kSolveTolerance = 1e-10;
/// Reciprocal condition estimate below which a fine block is rejected.
inline constexpr double kMinReciprocalCondition = 1e-13;

/// Coarse-band operator abar(x, x') obtained by eliminating the fine modes:
///
///   K = P*P [a - a Q* (Q a Q*)^-1 Q a] P*P
///
/// stored as a dense real n x n matrix (rows x, columns x').
struct HomogenizedKernel {
  GridSpec grid;
  ProjectionBasis basis;
  Eigen::MatrixXd matrix;
  /// Spectral coarse block S = P a P* - P a Q* (Q a Q*)^-1 Q a P* (k_p x k_p).
  Eigen::MatrixXcd coarse_operator;
  /// Largest |Im K| dropped when the real part was taken.
  double imag_residual = 0.0;
  /// max |K - K^H| before the real part was taken.
  double hermitian_residual = 0.0;
  /// Relative residual of the corrector solve.
  double solve_residual = 0.0;
  /// Reciprocal condition estimate of Q a Q*.
  double rcond = 1.0;
};

/// Multiplicative (diagonal) approximation abar(x) of a homogenized kernel.
struct HomogenizedCoefficient1D {
  GridSpec grid;
  ProjectionBasis basis;
  RealVector values;
  /// s in abar(x) = s K(x, x); s = n / k_p keeps constants fixed.
  double normalization = 1.0;
  double min_value = 0.0;
  double imag_residual = 0.0;
  double solve_residual = 0.0;
};

/// Eliminates the fine modes of `a` on `basis` (1D grids only). Throws
/// IllConditioned when Q a Q* cannot be factored reliably, Dimension when
/// the basis does not sit on the coefficient's grid.
HomogenizedKernel homogenize_kernel_1d(const CoefficientField& a, const ProjectionBasis& basis);

/// abar(x) = (n / k_p) K(x, x). Never clamps: a non-positive result is left
/// for the caller to flag through `min_value`.
HomogenizedCoefficient1D extract_diagonal(const HomogenizedKernel& kernel);

inline HomogenizedCoefficient1D homogenize_1d(const CoefficientField& a,
                                              const ProjectionBasis& basis) {
  return extract_diagonal(homogenize_kernel_1d(a, basis));
}

/// Low-pass baseline P*P a with no corrector. Throws DegenerateCoefficient
/// when the filtered field is not strictly positive.
CoefficientField raw_filter_1d(const CoefficientField& a, const ProjectionBasis& basis);

/// ||K - diag(K)||_F / ||K||_F. Throws UndefinedRatio for a zero kernel.
double offdiag_mass(const Eigen::MatrixXd& kernel);
inline double offdiag_mass(const HomogenizedKernel& kernel) { return offdiag_mass(kernel.matrix); }

}  // namespace homog
