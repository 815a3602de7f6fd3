#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "homog/coefficients.hpp"
#include "homog/spectral_ops.hpp"

namespace homog::detail {

using Mode = WaveVector;

/// Spectral matrix of multiplication by a: entry (k, k') is
/// (F a F*)[k, k'] = a_hat(k - k') / N under the unitary transform.
class ConvolutionSymbol {
 public:
  explicit ConvolutionSymbol(const CoefficientField& a);

  Complex operator()(int dkx, int dky) const noexcept;
  /// True when a_hat vanishes off ky = 0, i.e. a does not depend on y.
  bool y_invariant() const noexcept { return y_invariant_; }

  Eigen::MatrixXcd gather(std::span<const Mode> rows, std::span<const Mode> cols) const;

 private:
  int nx_;
  int ny_;
  ComplexVector hat_;
  bool y_invariant_ = false;
};

/// Modes of the subspace (band_x, band_y) in kx-fast order.
std::vector<Mode> subspace_modes(const ProjectionBasis& basis, Band band_x, Band band_y);

struct HpdSolve {
  Eigen::MatrixXcd solution;
  double residual = 0.0;  // ||M X - B||_F / ||B||_F
  double rcond = 0.0;
};

/// Solves M X = B for Hermitian positive-definite M by Cholesky with
/// iterative refinement down to `tolerance`. Throws IllConditioned when the
/// factorization fails or the reciprocal condition estimate is below
/// `min_rcond`; `context` is appended to the message.
HpdSolve solve_hpd(const Eigen::MatrixXcd& matrix, const Eigen::MatrixXcd& rhs,
                   double tolerance, double min_rcond, const std::string& context);

/// P* (or Q*, F^-1) applied to every column of a band-coefficient matrix.
Eigen::MatrixXcd embed_columns(const Eigen::MatrixXcd& coefficients,
                               const AxisPartition& partition, Band band);

}  // namespace homog::detail
