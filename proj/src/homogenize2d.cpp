#include "homog/homogenize2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "fft.hpp"
#include "homog/error.hpp"
#include "schur.hpp"

namespace homog {
namespace {

using detail::fft_slot;

constexpr Subspace kOrder[4] = {Subspace::PP, Subspace::QP, Subspace::PQ, Subspace::QQ};

std::pair<Band, Band> bands(Subspace s) {
  switch (s) {
    case Subspace::PP: return {Band::Coarse, Band::Coarse};
    case Subspace::QP: return {Band::Fine, Band::Coarse};
    case Subspace::PQ: return {Band::Coarse, Band::Fine};
    case Subspace::QQ: break;
  }
  return {Band::Fine, Band::Fine};
}

void require_same_grid(const CoefficientField& a, const Basis2D& basis) {
  if (!(a.grid == basis.grid())) {
    throw Error(ErrorCategory::Dimension, "basis and coefficient live on different grids");
  }
}

void check_cap(std::size_t dimension, std::size_t cap) {
  if (dimension > cap) {
    throw Error(ErrorCategory::SizeLimit,
                "fine block dimension " + std::to_string(dimension) + " exceeds the cap of " +
                    std::to_string(cap) + " (dense storage would need " +
                    std::to_string(dimension * dimension * sizeof(Complex) >> 20) + " MiB)");
  }
}

// Diagonal of P* S P, scaled so that S = c I maps to c everywhere:
//   (P* S P)(x, x) = (1/N) sum_{p,q} exp(2 pi i (k_p - k_q).x) S[p, q],
// accumulated by wavevector difference and resolved with one inverse FFT.
RealVector sandwich_diagonal(const Eigen::MatrixXcd& s, const std::vector<WaveVector>& modes,
                             const GridSpec& grid, double scale, double& imag_residual) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  ComplexVector g(grid.size());
  for (Eigen::Index q = 0; q < s.cols(); ++q) {
    const WaveVector& kq = modes[static_cast<std::size_t>(q)];
    for (Eigen::Index p = 0; p < s.rows(); ++p) {
      const WaveVector& kp = modes[static_cast<std::size_t>(p)];
      g[static_cast<std::size_t>(fft_slot(kp.ky - kq.ky, ny)) * nx + fft_slot(kp.kx - kq.kx, nx)] +=
          s(p, q);
    }
  }
  detail::dft_along_x(g.data(), nx, ny, detail::Direction::Backward);
  detail::dft_along_y(g.data(), nx, ny, detail::Direction::Backward);

  const double factor = scale / static_cast<double>(grid.size());
  RealVector out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = factor * g[i].real();
    imag_residual = std::max(imag_residual, std::abs(factor * g[i].imag()));
  }
  return out;
}

Eigen::VectorXcd to_eigen(const ComplexVector& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string min_a_context(const CoefficientField& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "min(a) = %.6e", a.min());
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basis2D

Basis2D::Basis2D(ProjectionBasis basis) : basis_(std::move(basis)) {
  if (basis_.grid().is_1d()) {
    throw Error(ErrorCategory::Dimension, "Basis2D needs a 2D grid");
  }
  for (Subspace s : kOrder) {
    const auto [bx, by] = bands(s);
    modes_[static_cast<std::size_t>(s)] = detail::subspace_modes(basis_, bx, by);
  }
  for (Subspace s : {Subspace::QP, Subspace::PQ, Subspace::QQ}) {
    const auto& m = modes(s);
    fine_.insert(fine_.end(), m.begin(), m.end());
  }
  for (const auto& k : modes(Subspace::PP)) {
    kx_coarse_.push_back(basis_.x().derivative(k.kx));
    ky_coarse_.push_back(basis_.y().derivative(k.ky));
  }
  for (const auto& k : fine_) {
    kx_fine_.push_back(basis_.x().derivative(k.kx));
    ky_fine_.push_back(basis_.y().derivative(k.ky));
  }
}

std::size_t Basis2D::offset(Subspace s) const noexcept {
  std::size_t off = 0;
  for (Subspace t : kOrder) {
    if (t == s) break;
    off += dimension(t);
  }
  return off;
}

// ---------------------------------------------------------------------------
// Block decomposition

Eigen::MatrixXcd BlockDecomposition::assemble() const {
  const Eigen::Index np = d.rows();
  const Eigen::Index nq = a.rows();
  Eigen::MatrixXcd full(np + nq, np + nq);
  full.topLeftCorner(np, np) = d;
  full.topRightCorner(np, nq) = c;
  full.bottomLeftCorner(nq, np) = b;
  full.bottomRightCorner(nq, nq) = a;
  return full;
}

Eigen::MatrixXcd BlockDecomposition::block(Subspace row, Subspace col) const {
  const auto r0 = static_cast<Eigen::Index>(basis.offset(row));
  const auto c0 = static_cast<Eigen::Index>(basis.offset(col));
  const auto nr = static_cast<Eigen::Index>(basis.dimension(row));
  const auto nc = static_cast<Eigen::Index>(basis.dimension(col));
  const Eigen::Index np = d.rows();
  if (row == Subspace::PP && col == Subspace::PP) return d;
  if (row == Subspace::PP) return c.block(0, c0 - np, nr, nc);
  if (col == Subspace::PP) return b.block(r0 - np, 0, nr, nc);
  return a.block(r0 - np, c0 - np, nr, nc);
}

BlockDecomposition decompose_blocks(const CoefficientField& a, const Basis2D& basis,
                                    std::size_t fine_dimension_cap) {
  require_same_grid(a, basis);
  const auto& fine = basis.fine_modes();
  check_cap(fine.size(), fine_dimension_cap);

  const detail::ConvolutionSymbol symbol(a);
  const auto& coarse = basis.modes(Subspace::PP);
  Eigen::MatrixXcd b = symbol.gather(fine, coarse);
  Eigen::MatrixXcd c = b.adjoint();
  return BlockDecomposition{basis, symbol.gather(coarse, coarse), std::move(c), std::move(b),
                            symbol.gather(fine, fine)};
}

// ---------------------------------------------------------------------------
// Tensor coefficient

double TensorCoefficient2D::min_determinant() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xx.size(); ++i) lo = std::min(lo, xx[i] * yy[i] - xy[i] * yx[i]);
  return lo;
}

bool TensorCoefficient2D::indefinite() const {
  for (std::size_t i = 0; i < xx.size(); ++i) {
    if (!(xx[i] > 0.0) || !(yy[i] > 0.0) || !(xx[i] * yy[i] - xy[i] * yx[i] > 0.0)) return true;
  }
  return false;
}

TensorCoefficient2D isotropic_tensor(const CoefficientField& a) {
  const RealVector zero(a.values.size(), 0.0);
  return TensorCoefficient2D{a.grid, a.values, zero, zero, a.values};
}

TensorCoefficient2D homogenize_2d(const CoefficientField& a, const Basis2D& basis,
                                  std::size_t fine_dimension_cap) {
  require_same_grid(a, basis);
  const detail::ConvolutionSymbol symbol(a);
  const auto& coarse = basis.modes(Subspace::PP);
  const auto& fine = basis.fine_modes();

  // A y-invariant coefficient couples only equal ky, so the fine space splits
  // into independent ky sectors. Otherwise everything is one dense sector.
  // Each sector pairs fine rows with the coarse columns they can couple to.
  struct Sector {
    std::vector<Eigen::Index> fine;
    std::vector<Eigen::Index> coarse;
  };
  std::vector<Sector> sectors;
  if (symbol.y_invariant()) {
    std::map<int, Sector> by_ky;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      by_ky[fine[i].ky].fine.push_back(static_cast<Eigen::Index>(i));
    }
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      if (auto it = by_ky.find(coarse[i].ky); it != by_ky.end()) {
        it->second.coarse.push_back(static_cast<Eigen::Index>(i));
      }
    }
    // Sectors with ky outside the coarse y band have no coupling to PP.
    for (auto& [ky, s] : by_ky) {
      if (!s.coarse.empty()) sectors.push_back(std::move(s));
    }
  } else {
    check_cap(fine.size(), fine_dimension_cap);
    Sector all;
    all.fine.resize(fine.size());
    all.coarse.resize(coarse.size());
    for (std::size_t i = 0; i < fine.size(); ++i) all.fine[i] = static_cast<Eigen::Index>(i);
    for (std::size_t i = 0; i < coarse.size(); ++i) all.coarse[i] = static_cast<Eigen::Index>(i);
    sectors.push_back(std::move(all));
  }

  const Eigen::Index np = static_cast<Eigen::Index>(coarse.size());
  const Eigen::MatrixXcd d = symbol.gather(coarse, coarse);
  const Eigen::VectorXcd kx = to_eigen(basis.kx_fine());
  const Eigen::VectorXcd ky = to_eigen(basis.ky_fine());

  // With H = -M (Hermitian positive definite) and R_x = Kx B, R_y = Ky B:
  //   C Ka M^-1 Kb B = R_a^H H^-1 R_b,
  // because C Ka = -(Ka B)^H for purely imaginary Ka.
  Eigen::MatrixXcd t_xx = Eigen::MatrixXcd::Zero(np, np);
  Eigen::MatrixXcd t_xy = Eigen::MatrixXcd::Zero(np, np);
  Eigen::MatrixXcd t_yx = Eigen::MatrixXcd::Zero(np, np);
  Eigen::MatrixXcd t_yy = Eigen::MatrixXcd::Zero(np, np);
  double residual = 0.0;
  double rcond = 1.0;
  const std::string context = min_a_context(a);

  for (const auto& sector : sectors) {
    const auto& idx = sector.fine;
    const auto m = static_cast<Eigen::Index>(idx.size());
    const auto nc = static_cast<Eigen::Index>(sector.coarse.size());
    std::vector<WaveVector> modes(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) modes[i] = fine[static_cast<std::size_t>(idx[i])];
    std::vector<WaveVector> cols(sector.coarse.size());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = coarse[static_cast<std::size_t>(sector.coarse[i])];

    Eigen::MatrixXcd h = symbol.gather(modes, modes);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Complex dxj = kx(idx[j]);
      const Complex dyj = ky(idx[j]);
      for (Eigen::Index i = 0; i < m; ++i) {
        h(i, j) *= -(kx(idx[i]) * dxj + ky(idx[i]) * dyj);
      }
    }

    const Eigen::MatrixXcd b = symbol.gather(modes, cols);
    Eigen::MatrixXcd rhs(m, 2 * nc);
    for (Eigen::Index i = 0; i < m; ++i) {
      rhs.row(i).head(nc) = kx(idx[i]) * b.row(i);
      rhs.row(i).tail(nc) = ky(idx[i]) * b.row(i);
    }
    const auto solve = detail::solve_hpd(h, rhs, 1e-10, 1e-13, context);
    residual = std::max(residual, solve.residual);
    rcond = std::min(rcond, solve.rcond);

    const auto rx = rhs.leftCols(nc);
    const auto ry = rhs.rightCols(nc);
    if (nc == np) {
      t_xx.noalias() += rx.adjoint() * solve.solution.leftCols(nc);
      t_xy.noalias() += rx.adjoint() * solve.solution.rightCols(nc);
      t_yx.noalias() += ry.adjoint() * solve.solution.leftCols(nc);
      t_yy.noalias() += ry.adjoint() * solve.solution.rightCols(nc);
    } else {
      const auto& c = sector.coarse;
      t_xx(c, c) += rx.adjoint() * solve.solution.leftCols(nc);
      t_xy(c, c) += rx.adjoint() * solve.solution.rightCols(nc);
      t_yx(c, c) += ry.adjoint() * solve.solution.leftCols(nc);
      t_yy(c, c) += ry.adjoint() * solve.solution.rightCols(nc);
    }
  }

  const double scale = static_cast<double>(a.grid.size()) / static_cast<double>(np);
  TensorCoefficient2D out{a.grid, {}, {}, {}, {}, scale};
  out.solve_residual = residual;
  out.rcond = rcond;
  out.xx = sandwich_diagonal(d - t_xx, coarse, a.grid, scale, out.imag_residual);
  out.xy = sandwich_diagonal(-t_xy, coarse, a.grid, scale, out.imag_residual);
  out.yx = sandwich_diagonal(-t_yx, coarse, a.grid, scale, out.imag_residual);
  out.yy = sandwich_diagonal(d - t_yy, coarse, a.grid, scale, out.imag_residual);
  return out;
}

TensorCoefficient2D raw_filter_2d(const CoefficientField& a, const Basis2D& basis) {
  require_same_grid(a, basis);
  const CoefficientField filtered =
      make_coefficient(a.grid, coarse_project(a.values, basis.projection()), a.provenance);
  return isotropic_tensor(filtered);
}

}  // namespace homog
