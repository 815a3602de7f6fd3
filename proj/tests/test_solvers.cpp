#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "homog/coefficients.hpp"
#include "homog/error.hpp"
#include "homog/homogenize2d.hpp"
#include "homog/solvers.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

ErrorCategory category_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCategory::Io;
}

TensorCoefficient2D tensor_from(const GridSpec& grid, auto&& xx, auto&& xy, auto&& yy) {
  RealVector vxx(grid.size()), vxy(grid.size()), vyy(grid.size());
  for (int iy = 0; iy < grid.ny(); ++iy) {
    for (int ix = 0; ix < grid.nx(); ++ix) {
      const double x = ix * grid.hx(), y = iy * grid.hy();
      const auto i = grid.index(ix, iy);
      vxx[i] = xx(x, y);
      vxy[i] = xy(x, y);
      vyy[i] = yy(x, y);
    }
  }
  return TensorCoefficient2D{.grid = grid, .xx = vxx, .xy = vxy, .yx = vxy, .yy = vyy};
}

double mms_max_error(int n) {
  const auto grid = GridSpec::square(n, n);
  const auto t = tensor_from(
      grid, [](double x, double y) { return oracle::mms_tensor(x, y).xx; },
      [](double x, double y) { return oracle::mms_tensor(x, y).xy; },
      [](double x, double y) { return oracle::mms_tensor(x, y).yy; });
  RealVector f(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) f[static_cast<std::size_t>(j) * (n + 1) + i] = oracle::mms_source(i * 1.0 / n, j * 1.0 / n);
  }
  const auto sol = solve_diffusion_2d_fd(t, {}, 1e-12, f);
  EXPECT_TRUE(sol.converged);
  double worst = 0.0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(sol.at(i, j) - oracle::mms_solution(i * 1.0 / n, j * 1.0 / n)));
  }
  return worst;
}

}  // namespace

TEST(Exact1D, UnitCoefficientIsLinear) {
  const auto sol = exact_diffusion_1d(gen_constant(GridSpec::line(32), 1.0));
  ASSERT_EQ(sol.u.size(), 33u);
  for (int i = 0; i <= 32; ++i) EXPECT_NEAR(sol.at(i), i / 32.0, 1e-15);
  EXPECT_LE(sol.residual, 1e-14);
  EXPECT_EQ(sol.method, "trapezoid_quadrature");
}

TEST(Exact1D, MatchesLinearReciprocalOracle) {
  for (auto a : {gen_periodic(GridSpec::line(64), 1.0, 4.0, 64),
                 gen_filtered_random(GridSpec::line(100), 4, 0.05)}) {
    const auto sol = exact_diffusion_1d(a);
    const auto ref = oracle::linear_reciprocal_profile(a.values);
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(sol.u[i], ref[i], 1e-12);
    EXPECT_LE(sol.residual, 1e-12);
  }
}

TEST(Exact1D, TwoPhaseProfileApproachesClosedForm) {
  const int n = 128;
  const auto sol = exact_diffusion_1d(gen_periodic(GridSpec::line(n), 1.0, 4.0, n));
  EXPECT_NEAR(sol.at(n / 2), 0.8, 1.0 / n);
  for (int i = 0; i <= n; ++i) {
    EXPECT_NEAR(sol.at(i), oracle::two_phase_solution(i * 1.0 / n, 1.0, 4.0), 1.0 / n);
  }
}

TEST(Exact1D, CustomBoundaryValuesAndErrors) {
  const auto a = gen_constant(GridSpec::line(8), 2.0);
  const auto sol = exact_diffusion_1d(a, 1.0, 0.0);
  EXPECT_NEAR(sol.at(0), 1.0, 0.0);
  EXPECT_NEAR(sol.at(8), 0.0, 1e-15);
  EXPECT_NEAR(sol.at(2), 0.75, 1e-15);
  const RealVector bad{1.0, -1.0, 1.0, 1.0};
  EXPECT_EQ(category_of([&] { (void)exact_diffusion_1d(GridSpec::line(4), bad); }),
            ErrorCategory::DegenerateCoefficient);
}

TEST(FiniteDifference2D, UnitCoefficientGivesLinearProfile) {
  const auto a = gen_constant(GridSpec::square(16, 12), 1.0);
  const auto sol = solve_diffusion_2d_fd(isotropic_tensor(a));
  ASSERT_EQ(sol.nodes_x, 17);
  ASSERT_EQ(sol.nodes_y, 13);
  for (int j = 0; j <= 12; ++j) {
    for (int i = 0; i <= 16; ++i) EXPECT_NEAR(sol.at(i, j), 1.0 - i / 16.0, 1e-12);
  }
  EXPECT_TRUE(sol.converged);
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_EQ(sol.method, "sparse_lu");
}

TEST(FiniteDifference2D, YInvariantCoefficientReducesToQuadrature) {
  // Harmonic face weights make the 1D flux balance identical to the trapezoid rule on 1/a.
  const int n = 48;
  const auto line = gen_filtered_random(GridSpec::line(n), 77, 0.2);
  const auto grid = GridSpec::square(n, 16);
  RealVector v(grid.size());
  for (int iy = 0; iy < 16; ++iy) {
    for (int ix = 0; ix < n; ++ix) v[grid.index(ix, iy)] = line.values[ix];
  }
  const auto fd = solve_diffusion_2d_fd(isotropic_tensor(make_coefficient(grid, v)));
  const auto exact = exact_diffusion_1d(line, 1.0, 0.0);
  for (int j = 0; j <= 16; ++j) {
    for (int i = 0; i <= n; ++i) EXPECT_NEAR(fd.at(i, j), exact.at(i), 1e-10);
  }
}

TEST(FiniteDifference2D, ManufacturedSolutionConvergesAtSecondOrder) {
  const double e32 = mms_max_error(32), e64 = mms_max_error(64), e128 = mms_max_error(128);
  const double r1 = std::log2(e32 / e64), r2 = std::log2(e64 / e128);
  EXPECT_NEAR(r1, 2.0, 0.2) << e32 << " " << e64;
  EXPECT_NEAR(r2, 2.0, 0.2) << e64 << " " << e128;
  EXPECT_LT(e128, 1e-3);
}

TEST(FiniteDifference2D, MaximumPrincipleForIsotropicCoefficient) {
  const auto a = gen_filtered_random(GridSpec::square(32, 32), 15, 0.05);
  const auto sol = solve_diffusion_2d_fd(isotropic_tensor(a));
  const auto [lo, hi] = std::minmax_element(sol.u.begin(), sol.u.end());
  EXPECT_GE(*lo, -1e-12);
  EXPECT_LE(*hi, 1.0 + 1e-12);
}

TEST(FiniteDifference2D, FlagsIndefiniteAndRejectsNonPositiveDiagonal) {
  const auto grid = GridSpec::square(8, 8);
  auto one = [](double, double) { return 1.0; };
  auto two = [](double, double) { return 2.0; };
  const auto sol = solve_diffusion_2d_fd(tensor_from(grid, one, two, one));
  EXPECT_TRUE(sol.indefinite_tensor);
  EXPECT_NEAR(sol.min_determinant, -3.0, 1e-15);

  auto zero = [](double, double) { return 0.0; };
  EXPECT_EQ(category_of([&] { (void)solve_diffusion_2d_fd(tensor_from(grid, zero, zero, one)); }),
            ErrorCategory::DegenerateCoefficient);
  const auto t = tensor_from(grid, one, zero, one);
  const RealVector wrong(10, 0.0);
  EXPECT_EQ(category_of([&] { (void)solve_diffusion_2d_fd(t, {}, 1e-10, wrong); }),
            ErrorCategory::Dimension);
}

TEST(CoarseCompare, RelativeNormsOfKnownFields) {
  const auto grid = GridSpec::line(4);
  const SolveResult ref{.grid = grid, .nodes_x = 5, .u = {1, 1, 1, 1, 1}};
  const SolveResult model{.grid = grid, .nodes_x = 5, .u = {2, 2, 2, 2, 2}};
  const auto e = coarse_compare(ref, model);
  EXPECT_DOUBLE_EQ(e.l1, 1.0);
  EXPECT_DOUBLE_EQ(e.l2, 1.0);
  EXPECT_EQ(coarse_compare(ref, ref).l2, 0.0);

  const SolveResult ramp{.grid = grid, .nodes_x = 5, .u = {1, 2, 3, 4, 9}};
  const SolveResult flipped{.grid = grid, .nodes_x = 5, .u = {4, 3, 2, 1, 0}};
  const auto n = oracle::relative_norms(ramp.u, flipped.u);
  const auto full = coarse_compare(ramp, flipped);
  EXPECT_NEAR(full.l1, n.l1, 1e-15);
  EXPECT_NEAR(full.l2, n.l2, 1e-15);
  // Same mean over the periodic samples, so the mean-only comparison sees no error.
  const auto basis = build_projection(grid, 0);
  EXPECT_NEAR(coarse_compare(ramp, flipped, CompareMode::Coarse, &basis).l2, 0.0, 1e-15);
}

TEST(CoarseCompare, ErrorCategories) {
  const auto grid = GridSpec::line(4);
  const SolveResult zero{.grid = grid, .nodes_x = 5, .u = RealVector(5, 0.0)};
  const SolveResult one{.grid = grid, .nodes_x = 5, .u = RealVector(5, 1.0)};
  const SolveResult shorter{.grid = GridSpec::line(6), .nodes_x = 7, .u = RealVector(7, 1.0)};
  EXPECT_EQ(category_of([&] { (void)coarse_compare(zero, one); }), ErrorCategory::UndefinedRatio);
  EXPECT_EQ(category_of([&] { (void)coarse_compare(one, shorter); }), ErrorCategory::Dimension);
  EXPECT_EQ(category_of([&] { (void)coarse_compare(one, one, CompareMode::Coarse); }),
            ErrorCategory::InvalidArgument);
}
