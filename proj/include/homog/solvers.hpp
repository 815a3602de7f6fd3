#pragma once

#include <span>
#include <string>

#include "homog/coefficients.hpp"
#include "homog/homogenize2d.hpp"
#include "homog/spectral_ops.hpp"

namespace homog {

/// Dirichlet data on the left (x = 0) and right (x = 1) edges, zero Neumann
/// (du/dy = 0) on the top and bottom edges.
struct BoundaryConditions2D {
  double left = 1.0;
  double right = 0.0;
  bool neumann_top_bottom = true;
};

/// Nodal solution on the closed domain. A grid of n cells carries n + 1
/// nodes per axis (x = i / n, i = 0..n); 1D results have nodes_y == 1.
struct SolveResult {
  GridSpec grid;
  int nodes_x = 0;
  int nodes_y = 1;
  RealVector u{};
  /// Relative residual of the discrete system (flux spread for quadrature).
  double residual = 0.0;
  bool converged = true;
  int refinement_steps = 0;
  /// The tensor had a point with non-positive determinant.
  bool indefinite_tensor = false;
  double min_determinant = 0.0;
  std::string method{};

  double at(int ix, int iy = 0) const {
    return u[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nodes_x) +
             static_cast<std::size_t>(ix)];
  }
};

/// Exact solution of (a u')' = 0 on [0, 1] with u(0) = u_left, u(1) = u_right:
///   u(x) = u_left + (u_right - u_left) int_0^x 1/a / int_0^1 1/a,
/// integrated with the cumulative trapezoid rule over the periodic samples.
/// Throws DegenerateCoefficient for a non-positive coefficient.
SolveResult exact_diffusion_1d(const GridSpec& grid, std::span<const double> a,
                               double u_left = 0.0, double u_right = 1.0);
inline SolveResult exact_diffusion_1d(const CoefficientField& a, double u_left = 0.0,
                                      double u_right = 1.0) {
  return exact_diffusion_1d(a.grid, a.values, u_left, u_right);
}

/// Second-order finite differences for div(abar grad u) = f on the unit
/// square, on the (nx + 1) x (ny + 1) nodes of the coefficient grid.
///
/// Diagonal fluxes use face-harmonic averages:
///   d/dx(Axx du/dx) ~ [A_{i+1/2}(u_{i+1} - u_i) - A_{i-1/2}(u_i - u_{i-1})] / h^2,
///   A_{i+1/2} = 2 A_i A_{i+1} / (A_i + A_{i+1}).
/// Mixed terms use the centered cross difference with nodal coefficients:
///   d/dx(Axy du/dy) ~ [Axy_{i+1,j}(u_{i+1,j+1} - u_{i+1,j-1})
///                     - Axy_{i-1,j}(u_{i-1,j+1} - u_{i-1,j-1})] / (4 hx hy),
/// and symmetrically for d/dy(Ayx du/dx). Neumann edges mirror both u and the
/// coefficient across the boundary. The coefficient is periodic in x, so
/// node nx reuses sample 0.
///
/// `source` (optional) holds f on the nodes. The sparse system is factored
/// directly and refined until the relative residual is <= `tolerance`;
/// otherwise `converged` is false. Throws DegenerateCoefficient if Axx or
/// Ayy is not strictly positive; a non-positive determinant is only flagged.
SolveResult solve_diffusion_2d_fd(const TensorCoefficient2D& coefficient,
                                  const BoundaryConditions2D& bc = {}, double tolerance = 1e-10,
                                  std::span<const double> source = {});

struct ErrorPair {
  double l1 = 0.0;
  double l2 = 0.0;
};

enum class CompareMode { Full, Coarse };

/// ||model - reference||_p / ||reference||_p for p = 1, 2 over all nodes.
/// In Coarse mode both solutions are first reduced to their periodic samples
/// and low-pass projected on `basis` (the ubar = P*P u comparison).
/// Throws UndefinedRatio for a zero reference and Dimension on a mismatch.
ErrorPair coarse_compare(const SolveResult& reference, const SolveResult& model,
                         CompareMode mode = CompareMode::Full,
                         const ProjectionBasis* basis = nullptr);

}  // namespace homog
