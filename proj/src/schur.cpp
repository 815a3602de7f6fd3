#include "schur.hpp"

#include <cstdio>
#include <string>

#include "fft.hpp"
#include "homog/error.hpp"

namespace homog::detail {

ConvolutionSymbol::ConvolutionSymbol(const CoefficientField& a)
    : nx_(a.grid.nx()), ny_(a.grid.ny()), hat_(a.values.begin(), a.values.end()) {
  y_invariant_ = true;
  for (int iy = 1; iy < ny_ && y_invariant_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      if (a.values[a.grid.index(ix, iy)] != a.values[a.grid.index(ix, 0)]) {
        y_invariant_ = false;
        break;
      }
    }
  }

  dft_along_x(hat_.data(), nx_, ny_, Direction::Forward);
  dft_along_y(hat_.data(), nx_, ny_, Direction::Forward);
  const double inv_n = 1.0 / static_cast<double>(hat_.size());
  for (auto& c : hat_) c *= inv_n;
  // The exact transform of a y-invariant field vanishes off ky = 0.
  if (y_invariant_) {
    std::fill(hat_.begin() + nx_, hat_.end(), Complex(0.0));
  }
}

Complex ConvolutionSymbol::operator()(int dkx, int dky) const noexcept {
  return hat_[static_cast<std::size_t>(fft_slot(dky, ny_)) * nx_ + fft_slot(dkx, nx_)];
}

Eigen::MatrixXcd ConvolutionSymbol::gather(std::span<const Mode> rows,
                                           std::span<const Mode> cols) const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const Mode& c = cols[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const Mode& r = rows[static_cast<std::size_t>(i)];
      out(i, j) = (*this)(r.kx - c.kx, r.ky - c.ky);
    }
  }
  return out;
}

std::vector<Mode> subspace_modes(const ProjectionBasis& basis, Band band_x, Band band_y) {
  std::vector<Mode> modes;
  for (int ky : basis.y().modes(band_y)) {
    for (int kx : basis.x().modes(band_x)) modes.push_back({kx, ky});
  }
  return modes;
}

HpdSolve solve_hpd(const Eigen::MatrixXcd& matrix, const Eigen::MatrixXcd& rhs,
                   double tolerance, double min_rcond, const std::string& context) {
  HpdSolve out;
  if (matrix.rows() == 0) {
    out.solution = Eigen::MatrixXcd(0, rhs.cols());
    out.rcond = 1.0;
    return out;
  }

  Eigen::LLT<Eigen::MatrixXcd> llt(matrix);
  out.rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  if (llt.info() != Eigen::Success || !(out.rcond >= min_rcond)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "fine block is ill-conditioned (rcond = %.3e); ",
                  out.rcond);
    throw Error(ErrorCategory::IllConditioned, buf + context);
  }

  out.solution = llt.solve(rhs);
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return out;

  Eigen::MatrixXcd residual = rhs - matrix * out.solution;
  out.residual = residual.norm() / rhs_norm;
  for (int step = 0; step < 3 && out.residual > tolerance; ++step) {
    out.solution += llt.solve(residual);
    residual = rhs - matrix * out.solution;
    out.residual = residual.norm() / rhs_norm;
  }
  return out;
}

Eigen::MatrixXcd embed_columns(const Eigen::MatrixXcd& coefficients,
                               const AxisPartition& partition, Band band) {
  // Column-major storage of an m x c matrix is a row-major c x m Array2.
  const auto m = static_cast<int>(coefficients.rows());
  const auto c = static_cast<int>(coefficients.cols());
  Array2 in{m, c, ComplexVector(coefficients.data(), coefficients.data() + coefficients.size())};
  Array2 out = apply_axis_adjoint(in, partition, Axis::X, band);
  return Eigen::Map<const Eigen::MatrixXcd>(out.data.data(), partition.n(), c);
}

}  // namespace homog::detail
