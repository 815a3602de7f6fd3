#include "homog/homogenize1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "homog/error.hpp"
#include "schur.hpp"

namespace homog {
namespace {

void require_same_grid(const CoefficientField& a, const ProjectionBasis& basis) {
  if (!(a.grid == basis.grid())) {
    throw Error(ErrorCategory::Dimension, "basis and coefficient live on different grids");
  }
}

std::string min_a_context(const CoefficientField& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "min(a) = %.6e", a.min());
  return buf;
}

}  // namespace

HomogenizedKernel homogenize_kernel_1d(const CoefficientField& a, const ProjectionBasis& basis) {
  require_same_grid(a, basis);
  if (!a.grid.is_1d()) {
    throw Error(ErrorCategory::Dimension, "homogenize_kernel_1d needs a 1D grid");
  }

  const detail::ConvolutionSymbol symbol(a);
  const auto coarse = detail::subspace_modes(basis, Band::Coarse, Band::Coarse);
  const auto fine = detail::subspace_modes(basis, Band::Fine, Band::Coarse);

  const Eigen::MatrixXcd a_pp = symbol.gather(coarse, coarse);
  const Eigen::MatrixXcd a_qp = symbol.gather(fine, coarse);
  const Eigen::MatrixXcd a_qq = symbol.gather(fine, fine);

  // Corrector: P a Q* (Q a Q*)^-1 Q a P*.
  const auto solve = detail::solve_hpd(a_qq, a_qp, kSolveTolerance, kMinReciprocalCondition,
                                       min_a_context(a));
  const Eigen::MatrixXcd s = a_pp - a_qp.adjoint() * solve.solution;

  // K = P* S P, built as (P* (P* S)^H)^H with two batched embeddings.
  const Eigen::MatrixXcd ps = detail::embed_columns(s, basis.x(), Band::Coarse);
  const Eigen::MatrixXcd k = detail::embed_columns(ps.adjoint(), basis.x(), Band::Coarse).adjoint();

  HomogenizedKernel out{a.grid, basis, k.real(), s, 0.0, 0.0, solve.residual, solve.rcond};
  out.imag_residual = k.imag().cwiseAbs().maxCoeff();
  out.hermitian_residual = (k - k.adjoint()).cwiseAbs().maxCoeff();
  return out;
}

HomogenizedCoefficient1D extract_diagonal(const HomogenizedKernel& kernel) {
  const double n = static_cast<double>(kernel.grid.size());
  const double scale = n / static_cast<double>(kernel.basis.coarse_count());
  RealVector values(kernel.grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    values[i] = scale * kernel.matrix(j, j);
  }
  const double lo = *std::min_element(values.begin(), values.end());
  return HomogenizedCoefficient1D{kernel.grid,          kernel.basis,          std::move(values),
                                  scale,                lo,                    kernel.imag_residual,
                                  kernel.solve_residual};
}

CoefficientField raw_filter_1d(const CoefficientField& a, const ProjectionBasis& basis) {
  require_same_grid(a, basis);
  RealVector filtered = coarse_project(a.values, basis);
  Provenance provenance = a.provenance;
  provenance.parameters.emplace_back("raw_filter_cutoff_x", basis.x().cutoff());
  if (!a.grid.is_1d()) provenance.parameters.emplace_back("raw_filter_cutoff_y", basis.y().cutoff());
  return make_coefficient(a.grid, std::move(filtered), std::move(provenance));
}

double offdiag_mass(const Eigen::MatrixXd& kernel) {
  const double total = kernel.norm();
  if (!(total > 0.0)) {
    throw Error(ErrorCategory::UndefinedRatio, "off-diagonal mass of a zero kernel");
  }
  Eigen::MatrixXd off = kernel;
  off.diagonal().setZero();
  return off.norm() / total;
}

}  // namespace homog
