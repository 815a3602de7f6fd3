#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "homog/error.hpp"
#include "homog/spectral_ops.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

RealVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  RealVector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

ComplexVector complexify(const RealVector& v) { return ComplexVector(v.begin(), v.end()); }

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(AxisPartition, CutoffOneOnEightModes) {
  const auto p = AxisPartition::with_cutoff(8, 1);
  EXPECT_EQ(p.coarse(), (std::vector<int>{-1, 0, 1}));
  EXPECT_EQ(p.coarse_count(), 3);
  EXPECT_EQ(p.fine_count(), 5);
  EXPECT_EQ(p.fine(), (std::vector<int>{-3, -2, 2, 3, 4}));
}

TEST(AxisPartition, DcOnlyAndNyquistOnlyFine) {
  EXPECT_EQ(AxisPartition::with_cutoff(8, 0).coarse(), (std::vector<int>{0}));
  const auto p = AxisPartition::with_cutoff(8, 3);
  EXPECT_EQ(p.coarse_count(), 7);
  EXPECT_EQ(p.fine(), (std::vector<int>{4}));
}

TEST(AxisPartition, RejectsCutoffReachingNyquist) {
  try {
    (void)AxisPartition::with_cutoff(8, 4);
    FAIL() << "expected an invalid-cutoff error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::InvalidCutoff);
  }
  EXPECT_THROW((void)AxisPartition::with_cutoff(8, -1), Error);
}

TEST(AxisPartition, CoarseSetIsConjugationSymmetric) {
  for (int c = 0; c < 16; ++c) {
    const auto p = AxisPartition::with_cutoff(32, c);
    for (int k : p.coarse()) EXPECT_TRUE(p.is_coarse(-k)) << k;
    EXPECT_TRUE(p.is_coarse(0));
    EXPECT_FALSE(p.is_coarse(16));
  }
}

TEST(DerivativeSpectrum, CutoffOneValues) {
  const auto d = derivative_spectrum(AxisPartition::with_cutoff(8, 1));
  const double tau = 2.0 * std::numbers::pi;
  ASSERT_EQ(d.coarse.size(), 3u);
  EXPECT_NEAR(std::abs(d.coarse[0] - Complex(0, -tau)), 0.0, 1e-15);
  EXPECT_EQ(d.coarse[1], Complex(0.0));
  EXPECT_NEAR(std::abs(d.coarse[2] - Complex(0, tau)), 0.0, 1e-15);
  // Nyquist carries +i pi n.
  EXPECT_NEAR(std::abs(d.fine.back() - Complex(0, std::numbers::pi * 8)), 0.0, 1e-12);
}

TEST(DerivativeSpectrum, FineEntriesBoundedAwayFromZero) {
  for (int c : {0, 3, 10}) {
    const auto d = derivative_spectrum(AxisPartition::with_cutoff(64, c));
    double smallest = 1e300;
    for (auto v : d.fine) smallest = std::min(smallest, std::abs(v));
    EXPECT_NEAR(smallest, 2.0 * std::numbers::pi * (c + 1), 1e-12);
  }
}

TEST(Transform, ConstantHasOnlyDc) {
  const auto grid = GridSpec::line(16);
  const auto basis = build_projection(grid, 2);
  const auto s = forward(RealVector(16, 3.0), basis);
  for (int k = -7; k <= 8; ++k) {
    if (k == 0) {
      EXPECT_NEAR(std::abs(s.at(k) - Complex(3.0 * 4.0)), 0.0, 1e-12);  // c sqrt(n)
    } else {
      EXPECT_LT(std::abs(s.at(k)), 1e-13) << k;
    }
  }
}

TEST(Transform, SingleHarmonic) {
  const int n = 32;
  const auto basis = build_projection(GridSpec::line(n), 4);
  RealVector v(n);
  for (int i = 0; i < n; ++i) v[i] = std::cos(2.0 * std::numbers::pi * i / n);
  const auto s = forward(v, basis);
  for (int k = -n / 2 + 1; k <= n / 2; ++k) {
    const double expected = std::abs(k) == 1 ? std::sqrt(n) / 2.0 : 0.0;
    EXPECT_NEAR(std::abs(s.at(k)), expected, 1e-12) << k;
  }
}

TEST(Transform, MatchesExplicitDftMatrix) {
  std::mt19937_64 rng(5);
  const int n = 24;
  const auto v = random_vector(n, rng);
  const auto s = forward(v, build_projection(GridSpec::line(n), 3));
  Eigen::VectorXcd ve(n);
  for (int i = 0; i < n; ++i) ve(i) = v[i];
  const Eigen::VectorXcd expected = oracle::dft_matrix(n) * ve;
  for (int r = 0; r < n; ++r) EXPECT_NEAR(std::abs(s.coefficients[r] - expected(r)), 0.0, 1e-12);
}

TEST(Transform, RoundTripAndParseval) {
  std::mt19937_64 rng(7);
  for (auto grid : {GridSpec::line(64), GridSpec::square(16, 32)}) {
    const auto basis = build_projection(grid, 3);
    const auto v = random_vector(grid.size(), rng);
    const auto s = forward(v, basis);
    double imag = 1.0;
    const auto back = inverse_real(s, &imag);
    double err = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      err = std::max(err, std::abs(back[i] - v[i]));
      norm2 += v[i] * v[i];
    }
    EXPECT_LE(err, 1e-12);
    EXPECT_LE(imag, 1e-12);
    EXPECT_NEAR(s.squared_norm(), norm2, 1e-12 * norm2);
  }
}

TEST(Transform, SizeMismatchIsDimensionError) {
  const auto basis = build_projection(GridSpec::line(16), 1);
  try {
    (void)forward(RealVector(15, 1.0), basis);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Dimension);
  }
}

TEST(CoarseProject, DcOnlyGivesMean) {
  std::mt19937_64 rng(11);
  const auto v = random_vector(32, rng);
  double mean = 0.0;
  for (double x : v) mean += x / 32.0;
  const auto p = coarse_project(v, build_projection(GridSpec::line(32), 0));
  for (double x : p) EXPECT_NEAR(x, mean, 1e-13);
}

TEST(CoarseProject, IdentityOnBandLimitedInput) {
  const int n = 32;
  RealVector v(n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    v[i] = 1.0 + std::sin(2 * std::numbers::pi * 5 * x) + 0.3 * std::cos(2 * std::numbers::pi * 15 * x);
  }
  const auto p = coarse_project(v, build_projection(GridSpec::line(n), 15));
  for (int i = 0; i < n; ++i) EXPECT_NEAR(p[i], v[i], 1e-12);
  // The full basis keeps even the Nyquist mode.
  RealVector alt(n);
  for (int i = 0; i < n; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const auto q = coarse_project(alt, full_projection(GridSpec::line(n)));
  for (int i = 0; i < n; ++i) EXPECT_NEAR(q[i], alt[i], 1e-12);
}

TEST(CoarseProject, IdempotentAndComplementary) {
  std::mt19937_64 rng(13);
  for (auto grid : {GridSpec::line(64), GridSpec::square(32, 16)}) {
    const auto basis = build_projection(grid, 5);
    const auto v = random_vector(grid.size(), rng);
    const auto p = coarse_project(v, basis);
    const auto pp = coarse_project(p, basis);
    const auto q = fine_project(v, basis);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_NEAR(pp[i], p[i], 1e-12);
      EXPECT_NEAR(p[i] + q[i], v[i], 1e-12);
    }
  }
}

TEST(ApplyAxis, RowsMatchExplicitProjectors) {
  std::mt19937_64 rng(17);
  const int n = 16, cutoff = 3;
  const auto part = AxisPartition::with_cutoff(n, cutoff);
  const auto v = random_vector(n, rng);
  Eigen::VectorXcd ve(n);
  for (int i = 0; i < n; ++i) ve(i) = v[i];

  const auto p = apply_axis(Array2{n, 1, complexify(v)}, part, Axis::X, Band::Coarse);
  const auto q = apply_axis(Array2{n, 1, complexify(v)}, part, Axis::X, Band::Fine);
  const Eigen::VectorXcd pe = oracle::coarse_rows(n, cutoff) * ve;
  const Eigen::VectorXcd qe = oracle::fine_rows(n, cutoff) * ve;
  ASSERT_EQ(p.cols, pe.size());
  ASSERT_EQ(q.cols, qe.size());
  for (int i = 0; i < p.cols; ++i) EXPECT_NEAR(std::abs(p.data[i] - pe(i)), 0.0, 1e-12);
  for (int i = 0; i < q.cols; ++i) EXPECT_NEAR(std::abs(q.data[i] - qe(i)), 0.0, 1e-12);
}

TEST(ApplyAxis, OrthogonalityIdentities) {
  std::mt19937_64 rng(19);
  const int n = 32;
  const auto part = AxisPartition::with_cutoff(n, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = complexify(random_vector(static_cast<std::size_t>(part.coarse_count()), rng));
    const auto f = complexify(random_vector(static_cast<std::size_t>(part.fine_count()), rng));
    const Array2 pc = apply_axis_adjoint(Array2{part.coarse_count(), 1, c}, part, Axis::X, Band::Coarse);
    const Array2 qf = apply_axis_adjoint(Array2{part.fine_count(), 1, f}, part, Axis::X, Band::Fine);
    EXPECT_LE(max_abs_diff(apply_axis(pc, part, Axis::X, Band::Coarse).data, c), 1e-12);  // P P* = I
    EXPECT_LE(max_abs_diff(apply_axis(qf, part, Axis::X, Band::Fine).data, f), 1e-12);    // Q Q* = I
    const auto pq = apply_axis(qf, part, Axis::X, Band::Coarse).data;                    // P Q* = 0
    const auto qp = apply_axis(pc, part, Axis::X, Band::Fine).data;                      // Q P* = 0
    for (auto z : pq) EXPECT_LE(std::abs(z), 1e-12);
    for (auto z : qp) EXPECT_LE(std::abs(z), 1e-12);
  }
}

TEST(ApplyAxis, AxesCommuteIn2D) {
  std::mt19937_64 rng(23);
  const auto grid = GridSpec::square(16, 8);
  const auto basis = build_projection(grid, 3, 2);
  const Array2 v{16, 8, complexify(random_vector(grid.size(), rng))};
  for (Band bx : {Band::Coarse, Band::Fine}) {
    for (Band by : {Band::Coarse, Band::Fine}) {
      const auto xy = apply_axis(apply_axis(v, basis.x(), Axis::X, bx), basis.y(), Axis::Y, by);
      const auto yx = apply_axis(apply_axis(v, basis.y(), Axis::Y, by), basis.x(), Axis::X, bx);
      EXPECT_LE(max_abs_diff(xy.data, yx.data), 1e-12);
      EXPECT_LE(max_abs_diff(project(v.data, basis, bx, by), xy.data), 1e-12);
    }
  }
}

TEST(Embed, IsAdjointOfProject) {
  std::mt19937_64 rng(29);
  const auto grid = GridSpec::square(8, 8);
  const auto basis = build_projection(grid, 2);
  const auto v = complexify(random_vector(grid.size(), rng));
  const auto pv = project(v, basis, Band::Fine, Band::Coarse);
  const auto w = complexify(random_vector(pv.size(), rng));
  // <P v, w> = <v, P* w>
  Complex lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) lhs += std::conj(pv[i]) * w[i];
  const auto ew = embed(w, basis, Band::Fine, Band::Coarse);
  for (std::size_t i = 0; i < v.size(); ++i) rhs += std::conj(v[i]) * ew[i];
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
}

TEST(SpectralDerivative, SineToCosine) {
  const int n = 64;
  RealVector v(n);
  for (int i = 0; i < n; ++i) v[i] = std::sin(2 * std::numbers::pi * i / n);
  const auto d = spectral_derivative(v, GridSpec::line(n));
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(d[i], 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * i / n), 1e-10);
  }
}

TEST(SpectralDerivative, AlongYOnSquare) {
  const int n = 32;
  const auto grid = GridSpec::square(n, n);
  RealVector v(grid.size());
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) v[grid.index(ix, iy)] = std::cos(4 * std::numbers::pi * iy / n);
  }
  const auto d = spectral_derivative(v, grid, Axis::Y);
  for (int iy = 0; iy < n; ++iy) {
    EXPECT_NEAR(d[grid.index(5, iy)], -4 * std::numbers::pi * std::sin(4 * std::numbers::pi * iy / n), 1e-10);
  }
}
