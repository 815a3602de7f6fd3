#include "homog/solvers.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "homog/error.hpp"

namespace homog {
namespace {

double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

class NodeMap {
 public:
  NodeMap(int nx, int ny) : nx_(nx), ny_(ny) {}

  // Mirror across the Neumann edges y = 0 and y = 1.
  int mirror_y(int j) const noexcept {
    if (j < 0) return -j;
    if (j > ny_) return 2 * ny_ - j;
    return j;
  }
  // Periodic sample index of node (i, j), j already mirrored into [0, ny].
  std::size_t sample(int i, int j) const noexcept {
    const int si = ((i % nx_) + nx_) % nx_;
    const int sj = j % ny_;
    return static_cast<std::size_t>(sj) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(si);
  }
  // Unknown index for interior-in-x node (i, j), 1 <= i <= nx - 1.
  Eigen::Index unknown(int i, int j) const noexcept {
    return static_cast<Eigen::Index>(j) * (nx_ - 1) + (i - 1);
  }
  Eigen::Index unknown_count() const noexcept {
    return static_cast<Eigen::Index>(nx_ - 1) * (ny_ + 1);
  }

 private:
  int nx_;
  int ny_;
};

}  // namespace

SolveResult exact_diffusion_1d(const GridSpec& grid, std::span<const double> a, double u_left,
                               double u_right) {
  require_size(grid, a.size(), "coefficient");
  if (!grid.is_1d()) throw Error(ErrorCategory::Dimension, "exact_diffusion_1d needs a 1D grid");
  const int n = grid.nx();
  for (double v : a) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCategory::DegenerateCoefficient,
                  "exact_diffusion_1d needs a strictly positive coefficient");
    }
  }

  // 1/a scaled by its maximum: the profile is invariant under a -> c a, and a
  // constant coefficient gives unit weights, so u = x is reproduced exactly.
  RealVector r(a.size());
  std::transform(a.begin(), a.end(), r.begin(), [](double v) { return 1.0 / v; });
  const double r_max = *std::max_element(r.begin(), r.end());
  for (auto& v : r) v /= r_max;

  RealVector cumulative(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double w = 0.5 * (r[static_cast<std::size_t>(i)] + r[static_cast<std::size_t>((i + 1) % n)]);
    cumulative[static_cast<std::size_t>(i) + 1] = cumulative[static_cast<std::size_t>(i)] + w;
  }
  const double total = cumulative.back();

  SolveResult out{.grid = grid, .nodes_x = n + 1};
  out.u.resize(cumulative.size());
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    out.u[i] = u_left + (u_right - u_left) * (cumulative[i] / total);
  }
  out.u.back() = u_right;

  // Discrete flux with face-harmonic coefficients must be constant.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    const double face = harmonic(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>((i + 1) % n)]);
    const double flux = face * (out.u[static_cast<std::size_t>(i) + 1] - out.u[static_cast<std::size_t>(i)]) * n;
    lo = std::min(lo, flux);
    hi = std::max(hi, flux);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  out.residual = scale > 0.0 ? (hi - lo) / scale : 0.0;
  out.method = "trapezoid_quadrature";
  return out;
}

SolveResult solve_diffusion_2d_fd(const TensorCoefficient2D& k, const BoundaryConditions2D& bc,
                                  double tolerance, std::span<const double> source) {
  const GridSpec& grid = k.grid;
  if (grid.is_1d()) throw Error(ErrorCategory::Dimension, "solve_diffusion_2d_fd needs a 2D grid");
  if (!bc.neumann_top_bottom) {
    throw Error(ErrorCategory::InvalidArgument,
                "only zero-Neumann top/bottom boundaries are supported");
  }
  for (const auto* field : {&k.xx, &k.xy, &k.yx, &k.yy}) require_size(grid, field->size(), "tensor");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(k.xx[i] > 0.0) || !(k.yy[i] > 0.0)) {
      throw Error(ErrorCategory::DegenerateCoefficient,
                  "tensor diagonal must be strictly positive (sample " + std::to_string(i) + ")");
    }
  }

  const int nx = grid.nx();
  const int ny = grid.ny();
  const int nodes_x = nx + 1;
  const int nodes_y = ny + 1;
  if (!source.empty() &&
      source.size() != static_cast<std::size_t>(nodes_x) * static_cast<std::size_t>(nodes_y)) {
    throw Error(ErrorCategory::Dimension, "source must hold one value per solution node");
  }

  const NodeMap map(nx, ny);
  const double hx2 = 1.0 / (grid.hx() * grid.hx());
  const double hy2 = 1.0 / (grid.hy() * grid.hy());
  const double hxy4 = 1.0 / (4.0 * grid.hx() * grid.hy());

  const Eigen::Index unknowns = map.unknown_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(unknowns) * 9);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);

  for (int j = 0; j <= ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      const Eigen::Index row = map.unknown(i, j);
      // Assemble -div(abar grad u) so the diagonal is positive.
      auto add = [&](int ci, int cj, double weight) {
        const int mj = map.mirror_y(cj);
        if (ci == 0) {
          rhs(row) -= weight * bc.left;
        } else if (ci == nx) {
          rhs(row) -= weight * bc.right;
        } else {
          triplets.emplace_back(row, map.unknown(ci, mj), weight);
        }
      };

      const int jn = map.mirror_y(j + 1);
      const int js = map.mirror_y(j - 1);
      const double axx = k.xx[map.sample(i, j)];
      const double ayy = k.yy[map.sample(i, j)];
      const double we = harmonic(axx, k.xx[map.sample(i + 1, j)]) * hx2;
      const double ww = harmonic(axx, k.xx[map.sample(i - 1, j)]) * hx2;
      const double wn = harmonic(ayy, k.yy[map.sample(i, jn)]) * hy2;
      const double ws = harmonic(ayy, k.yy[map.sample(i, js)]) * hy2;
      add(i, j, we + ww + wn + ws);
      add(i + 1, j, -we);
      add(i - 1, j, -ww);
      add(i, jn, -wn);
      add(i, js, -ws);

      const double xy_e = k.xy[map.sample(i + 1, j)] * hxy4;
      const double xy_w = k.xy[map.sample(i - 1, j)] * hxy4;
      const double yx_n = k.yx[map.sample(i, jn)] * hxy4;
      const double yx_s = k.yx[map.sample(i, js)] * hxy4;
      if (xy_e != 0.0 || xy_w != 0.0 || yx_n != 0.0 || yx_s != 0.0) {
        add(i + 1, jn, -(xy_e + yx_n));
        add(i + 1, js, xy_e + yx_s);
        add(i - 1, jn, xy_w + yx_n);
        add(i - 1, js, -(xy_w + yx_s));
      }

      if (!source.empty()) {
        rhs(row) -= source[static_cast<std::size_t>(j) * nodes_x + static_cast<std::size_t>(i)];
      }
    }
  }

  Eigen::SparseMatrix<double> matrix(unknowns, unknowns);
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  matrix.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(matrix);

  SolveResult out{.grid = grid, .nodes_x = nodes_x, .nodes_y = nodes_y};
  out.u.assign(static_cast<std::size_t>(nodes_x) * nodes_y, 0.0);
  out.method = "sparse_lu";
  out.min_determinant = k.min_determinant();
  out.indefinite_tensor = k.indefinite();
  if (lu.info() != Eigen::Success) {
    out.converged = false;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }

  Eigen::VectorXd x = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  auto relative_residual = [&](const Eigen::VectorXd& r) {
    return rhs_norm > 0.0 ? r.norm() / rhs_norm : r.norm();
  };
  Eigen::VectorXd r = rhs - matrix * x;
  out.residual = relative_residual(r);
  while (out.residual > tolerance && out.refinement_steps < 5) {
    x += lu.solve(r);
    r = rhs - matrix * x;
    out.residual = relative_residual(r);
    ++out.refinement_steps;
  }
  out.converged = std::isfinite(out.residual) && out.residual <= tolerance;

  for (int j = 0; j <= ny; ++j) {
    const std::size_t base = static_cast<std::size_t>(j) * nodes_x;
    out.u[base] = bc.left;
    out.u[base + static_cast<std::size_t>(nx)] = bc.right;
    for (int i = 1; i < nx; ++i) out.u[base + static_cast<std::size_t>(i)] = x(map.unknown(i, j));
  }
  return out;
}

ErrorPair coarse_compare(const SolveResult& reference, const SolveResult& model, CompareMode mode,
                         const ProjectionBasis* basis) {
  if (reference.nodes_x != model.nodes_x || reference.nodes_y != model.nodes_y ||
      reference.u.size() != model.u.size()) {
    throw Error(ErrorCategory::Dimension, "coarse_compare: solutions live on different grids");
  }

  RealVector ref = reference.u;
  RealVector mod = model.u;
  if (mode == CompareMode::Coarse) {
    if (basis == nullptr || !(basis->grid() == reference.grid)) {
      throw Error(ErrorCategory::InvalidArgument, "coarse comparison needs a basis on the grid");
    }
    // Drop the closing node of each axis to get the periodic samples.
    const GridSpec& grid = reference.grid;
    auto periodic = [&](const RealVector& u) {
      RealVector out(grid.size());
      for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
          out[grid.index(ix, iy)] = u[static_cast<std::size_t>(iy) * reference.nodes_x +
                                      static_cast<std::size_t>(ix)];
        }
      }
      return coarse_project(out, *basis);
    };
    ref = periodic(ref);
    mod = periodic(mod);
  }

  double d1 = 0.0, d2 = 0.0, r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = mod[i] - ref[i];
    d1 += std::abs(d);
    d2 += d * d;
    r1 += std::abs(ref[i]);
    r2 += ref[i] * ref[i];
  }
  if (!(r1 > 0.0)) throw Error(ErrorCategory::UndefinedRatio, "reference solution has zero norm");
  return ErrorPair{d1 / r1, std::sqrt(d2 / r2)};
}

}  // namespace homog
