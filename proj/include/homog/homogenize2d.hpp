#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

#include "homog/coefficients.hpp"
#include "homog/spectral_ops.hpp"

namespace homog {

/// Default cap on the dimension of the fine-fine block A.
inline constexpr std::size_t kDefaultFineDimensionCap = 6000;

/// Tensor-product subspaces: P_x P_y, Q_x P_y, P_x Q_y, Q_x Q_y.
enum class Subspace { PP = 0, QP = 1, PQ = 2, QQ = 3 };

/// 2D projection basis with its four subspaces listed in the order
/// (PP, QP, PQ, QQ); QP, PQ and QQ together form the fine space.
class Basis2D {
 public:
  /// Throws Dimension for a 1D grid.
  explicit Basis2D(ProjectionBasis basis);

  const ProjectionBasis& projection() const noexcept { return basis_; }
  const GridSpec& grid() const noexcept { return basis_.grid(); }

  const std::vector<WaveVector>& modes(Subspace s) const noexcept {
    return modes_[static_cast<std::size_t>(s)];
  }
  /// QP, PQ and QQ modes concatenated.
  const std::vector<WaveVector>& fine_modes() const noexcept { return fine_; }
  std::size_t dimension(Subspace s) const noexcept { return modes(s).size(); }
  /// Offset of a subspace in the full (PP, QP, PQ, QQ) ordering.
  std::size_t offset(Subspace s) const noexcept;

  /// Diagonals of K^P_x and K^P_y (on PP) and of the fine-space blocks
  /// script-K_x and script-K_y (on QP, PQ, QQ).
  const ComplexVector& kx_coarse() const noexcept { return kx_coarse_; }
  const ComplexVector& ky_coarse() const noexcept { return ky_coarse_; }
  const ComplexVector& kx_fine() const noexcept { return kx_fine_; }
  const ComplexVector& ky_fine() const noexcept { return ky_fine_; }

 private:
  ProjectionBasis basis_;
  std::array<std::vector<WaveVector>, 4> modes_;
  std::vector<WaveVector> fine_;
  ComplexVector kx_coarse_, ky_coarse_, kx_fine_, ky_fine_;
};

/// diag(a) in the subspace basis: [[D, C], [B, A]] with D on PP and A on the
/// fine space.
struct BlockDecomposition {
  Basis2D basis;
  Eigen::MatrixXcd d;
  Eigen::MatrixXcd c;
  Eigen::MatrixXcd b;
  Eigen::MatrixXcd a;

  /// Any of the 16 sub-blocks, e.g. block(QP, PQ) = Q_x P_y a P_x* Q_y*.
  Eigen::MatrixXcd block(Subspace row, Subspace col) const;
  /// The full N x N matrix in (PP, QP, PQ, QQ) order.
  Eigen::MatrixXcd assemble() const;
};

/// Throws SizeLimit when the fine dimension exceeds `fine_dimension_cap`.
BlockDecomposition decompose_blocks(const CoefficientField& a, const Basis2D& basis,
                                    std::size_t fine_dimension_cap = kDefaultFineDimensionCap);

/// Effective second-order tensor coefficient on the grid.
struct TensorCoefficient2D {
  GridSpec grid;
  RealVector xx;
  RealVector xy;
  RealVector yx;
  RealVector yy;
  /// (n_x n_y) / (k_p,x k_p,y); 1 for raw-filtered or isotropic tensors.
  double normalization = 1.0;
  double imag_residual = 0.0;
  double solve_residual = 0.0;
  double rcond = 1.0;

  /// min over the grid of xx*yy - xy*yx.
  double min_determinant() const;
  /// Some point has xx <= 0, yy <= 0 or a non-positive determinant.
  bool indefinite() const;
};

/// Tensor with xx = yy = a and zero off-diagonal terms.
TensorCoefficient2D isotropic_tensor(const CoefficientField& a);

/// Eliminates the fine space of `basis` and returns the diagonals of the four
/// effective operators
///
///   Axx = diag P*[D - C Kx M^-1 Kx B]P,   Axy = -diag P*[C Kx M^-1 Ky B]P,
///   Ayx = -diag P*[C Ky M^-1 Kx B]P,      Ayy = diag P*[D - C Ky M^-1 Ky B]P,
///
/// with M = Kx A Kx + Ky A Ky, each scaled so constants are fixed points.
/// Throws IllConditioned if M cannot be factored reliably and SizeLimit when
/// a dense fine block would exceed `fine_dimension_cap`. A y-invariant
/// coefficient is solved sector by sector in ky and never hits the cap.
TensorCoefficient2D homogenize_2d(const CoefficientField& a, const Basis2D& basis,
                                  std::size_t fine_dimension_cap = kDefaultFineDimensionCap);

/// xx = yy = P*P a, xy = yx = 0. Throws DegenerateCoefficient if the
/// filtered field is not strictly positive.
TensorCoefficient2D raw_filter_2d(const CoefficientField& a, const Basis2D& basis);

}  // namespace homog
